import { ApiClient, ApiError } from "./api.js";
import { parseBagsJsonl, renderBagDetail, renderBagList } from "./browse.js";
import {
  renderAnalysisResult,
  renderBagResult,
  renderModelOptions,
} from "./render.js";
import {
  bagRequestFailed,
  bagRequestStarted,
  bagRequestSucceeded,
  canSubmit,
  canSubmitBag,
  initialBagView,
  initialView,
  requestFailed,
  requestStarted,
  requestSucceeded,
  supersede,
  type AnalysisView,
  type BagAnalysisView,
} from "./state.js";
import type { BagRecord, PairInput } from "./types.js";

declare global {
  interface Window {
    MCMINE_API_BASE?: string;
  }
}

const api = new ApiClient(window.MCMINE_API_BASE ?? "");

function el<T extends HTMLElement>(id: string): T {
  const node = document.getElementById(id);
  if (!node) throw new Error(`missing element #${id}`);
  return node as T;
}

function describeError(error: unknown): string {
  if (error instanceof ApiError) return error.message;
  if (error instanceof DOMException && error.name === "AbortError") return "superseded";
  return "service unreachable";
}

/* ---------- single-pair analysis ---------- */

let view: AnalysisView = initialView();
let controller: AbortController | null = null;

function readForm(): void {
  view = {
    ...view,
    form: {
      problem: el<HTMLTextAreaElement>("problem").value,
      code: el<HTMLTextAreaElement>("code").value,
      model: el<HTMLSelectElement>("model").value,
      reasoning: el<HTMLInputElement>("reasoning").checked,
    },
  };
}

function paintSingle(): void {
  el<HTMLButtonElement>("analyze").disabled = !canSubmit(view.form) || view.state === "running";
  el<HTMLDivElement>("result").innerHTML = renderAnalysisResult(view);
}

async function runAnalysis(): Promise<void> {
  readForm();
  if (!canSubmit(view.form)) return;
  controller = supersede(controller);
  const mine = controller;
  view = requestStarted(view);
  paintSingle();
  try {
    const result = await api.analyze(
      view.form.problem,
      view.form.code,
      view.form.model,
      view.form.reasoning,
      mine.signal,
    );
    if (mine !== controller) return; // superseded mid-flight
    view = requestSucceeded(view, result);
  } catch (error) {
    if (mine !== controller) return;
    view = requestFailed(view, describeError(error));
  }
  paintSingle();
}

/* ---------- bag analysis ---------- */

let bagView: BagAnalysisView = initialBagView();
let bagController: AbortController | null = null;

function readBagForm(): void {
  const pairs: PairInput[] = [];
  document.querySelectorAll<HTMLElement>("#bag-pairs .pair-row").forEach((row) => {
    pairs.push({
      problem: row.querySelector<HTMLTextAreaElement>(".pair-problem")!.value,
      code: row.querySelector<HTMLTextAreaElement>(".pair-code")!.value,
    });
  });
  bagView = { ...bagView, pairs, model: el<HTMLSelectElement>("bag-model").value };
}

function paintBag(): void {
  el<HTMLButtonElement>("analyze-bag").disabled = !canSubmitBag(bagView) || bagView.state === "running";
  el<HTMLDivElement>("bag-result").innerHTML = renderBagResult(bagView);
}

function addPairRow(): void {
  const row = document.createElement("div");
  row.className = "pair-row";
  row.innerHTML = `
    <textarea class="pair-problem" placeholder="Problem description" rows="2"></textarea>
    <textarea class="pair-code" placeholder="Student code" rows="6"></textarea>`;
  row.querySelectorAll("textarea").forEach((area) =>
    area.addEventListener("input", () => {
      readBagForm();
      paintBag();
    }),
  );
  el<HTMLDivElement>("bag-pairs").appendChild(row);
}

async function runBagAnalysis(): Promise<void> {
  readBagForm();
  if (!canSubmitBag(bagView)) return;
  bagController = supersede(bagController);
  const mine = bagController;
  bagView = bagRequestStarted(bagView);
  paintBag();
  try {
    const result = await api.analyzeBag(bagView.pairs, bagView.model, mine.signal);
    if (mine !== bagController) return;
    bagView = bagRequestSucceeded(bagView, result);
  } catch (error) {
    if (mine !== bagController) return;
    bagView = bagRequestFailed(bagView, describeError(error));
  }
  paintBag();
}

/* ---------- dataset browser ---------- */

let bags: BagRecord[] = [];
let selectedBag: string | null = null;

function paintBrowser(): void {
  el<HTMLDivElement>("bag-list").innerHTML = bags.length
    ? renderBagList(bags, selectedBag)
    : "<p>Load a bags.jsonl file to browse a generated dataset.</p>";
  const bag = bags.find((b) => b.bag_id === selectedBag);
  el<HTMLDivElement>("bag-detail").innerHTML = bag ? renderBagDetail(bag) : "";
}

function wireBrowser(): void {
  el<HTMLInputElement>("bags-file").addEventListener("change", async (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (!file) return;
    try {
      bags = parseBagsJsonl(await file.text());
      selectedBag = bags[0]?.bag_id ?? null;
    } catch {
      bags = [];
      selectedBag = null;
      el<HTMLDivElement>("bag-list").innerHTML = "<p class='banner banner-error'>Not a bags.jsonl file.</p>";
      return;
    }
    paintBrowser();
  });
  el<HTMLDivElement>("bag-list").addEventListener("click", (event) => {
    const item = (event.target as HTMLElement).closest("li[data-bag]");
    if (!item) return;
    selectedBag = item.getAttribute("data-bag");
    paintBrowser();
  });
}

/* ---------- boot ---------- */

async function boot(): Promise<void> {
  try {
    const models = await api.models();
    const options = renderModelOptions(models, models[0]?.id ?? "");
    el<HTMLSelectElement>("model").innerHTML = options;
    el<HTMLSelectElement>("bag-model").innerHTML = options;
  } catch {
    el<HTMLDivElement>("result").innerHTML =
      "<div class='banner banner-error'>Could not load model list; is the service running?</div>";
  }

  ["problem", "code"].forEach((id) =>
    el(id).addEventListener("input", () => {
      readForm();
      paintSingle();
    }),
  );
  el("model").addEventListener("change", () => {
    readForm();
    paintSingle();
  });
  el<HTMLButtonElement>("analyze").addEventListener("click", () => void runAnalysis());

  addPairRow();
  el<HTMLSelectElement>("bag-model").addEventListener("change", () => {
    readBagForm();
    paintBag();
  });
  el<HTMLButtonElement>("add-pair").addEventListener("click", () => addPairRow());
  el<HTMLButtonElement>("analyze-bag").addEventListener("click", () => void runBagAnalysis());

  wireBrowser();
  readForm();
  readBagForm();
  paintSingle();
  paintBag();
  paintBrowser();

  document.querySelectorAll<HTMLButtonElement>("nav button").forEach((button) => {
    button.addEventListener("click", () => {
      document.querySelectorAll("main > section").forEach((section) => {
        section.classList.toggle("active", section.id === button.dataset.panel);
      });
      document.querySelectorAll("nav button").forEach((b) => b.classList.toggle("active", b === button));
    });
  });
}

void boot();
