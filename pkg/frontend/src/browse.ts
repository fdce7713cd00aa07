import type { BagRecord } from "./types.js";
import { escapeHtml } from "./render.js";

/** Parse a bags.jsonl file (one JSON object per line). Display-only: the
 * browser never evaluates or scores anything. */
export function parseBagsJsonl(text: string): BagRecord[] {
  const bags: BagRecord[] = [];
  for (const line of text.split("\n")) {
    const trimmed = line.trim();
    if (trimmed === "") continue;
    const obj = JSON.parse(trimmed);
    if (typeof obj.bag_id !== "string" || !Array.isArray(obj.pairs)) {
      throw new Error("not a bags.jsonl record");
    }
    bags.push(obj as BagRecord);
  }
  return bags;
}

export function renderBagList(bags: BagRecord[], selected: string | null): string {
  const items = bags
    .map((bag) => {
      const label = bag.gt_misconception_id ?? "correct-only";
      const cls = bag.bag_id === selected ? ' class="selected"' : "";
      return `<li${cls} data-bag="${escapeHtml(bag.bag_id)}">${escapeHtml(bag.bag_id)} &middot; ${escapeHtml(label)} &middot; ${bag.pairs.length} samples</li>`;
    })
    .join("\n");
  return `<ul class="bag-list">\n${items}\n</ul>`;
}

export function renderBagDetail(bag: BagRecord): string {
  const pairs = bag.pairs
    .map(
      (pair, i) => `<section class="bag-pair">
  <h4>Sample ${i + 1} &mdash; ${escapeHtml(pair.problem_id)}${pair.exhibits ? " (exhibits " + escapeHtml(pair.exhibits) + ")" : ""}</h4>
  <pre>${escapeHtml(pair.code)}</pre>
</section>`,
    )
    .join("\n");
  return `<div class="bag-detail" data-bag="${escapeHtml(bag.bag_id)}">\n${pairs}\n</div>`;
}
