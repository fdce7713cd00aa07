import type { AnalysisView, BagAnalysisView } from "./state.js";
import type { ModelInfo, Prediction } from "./types.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function renderReasoningTrace(trace: string | null): string {
  if (!trace) return "";
  return `<details class="reasoning-trace">
  <summary>Reasoning trace</summary>
  <pre>${escapeHtml(trace)}</pre>
</details>`;
}

export function renderPredictionCard(
  prediction: Prediction | null,
  reasoningTrace: string | null,
  elapsedMs: number,
): string {
  const badge = `<span class="elapsed">${elapsedMs} ms</span>`;
  if (prediction === null) {
    return `<div class="card card-clean">
  <h3>No misconception found</h3>
  <p>The code does not appear to exhibit a programming misconception.</p>
  ${badge}${renderReasoningTrace(reasoningTrace)}
</div>`;
  }
  return `<div class="card card-misconception">
  <h3>Potential misconception</h3>
  <p class="description">${escapeHtml(prediction.description)}</p>
  <p class="explanation">${escapeHtml(prediction.explanation)}</p>
  ${badge}${renderReasoningTrace(reasoningTrace)}
</div>`;
}

export function renderErrorBanner(message: string): string {
  return `<div class="banner banner-error" role="alert">${escapeHtml(message)}</div>`;
}

/** The result area for a single-pair view: a card only once the request is
 * done, a banner on error, a spinner note while running. */
export function renderAnalysisResult(view: AnalysisView): string {
  switch (view.state) {
    case "idle":
      return "";
    case "running":
      return `<div class="running">Analyzing&hellip;</div>`;
    case "error":
      return renderErrorBanner(view.error ?? "request failed");
    case "done": {
      const result = view.result;
      if (!result) return "";
      return renderPredictionCard(result.prediction, result.reasoning_trace, result.elapsed_ms);
    }
  }
}

export function renderPerSampleTable(perSample: (Prediction | null)[]): string {
  const rows = perSample
    .map((pred, i) => {
      const cell = pred === null ? "<em>none</em>" : escapeHtml(pred.description);
      return `<tr><td>${i + 1}</td><td>${cell}</td></tr>`;
    })
    .join("\n");
  return `<table class="per-sample">
<thead><tr><th>#</th><th>Per-sample prediction</th></tr></thead>
<tbody>
${rows}
</tbody>
</table>`;
}

export function renderBagResult(view: BagAnalysisView): string {
  switch (view.state) {
    case "idle":
      return "";
    case "running":
      return `<div class="running">Analyzing bag&hellip;</div>`;
    case "error":
      return renderErrorBanner(view.error ?? "request failed");
    case "done": {
      const result = view.result;
      if (!result) return "";
      const card = renderPredictionCard(result.prediction, result.reasoning_trace, result.elapsed_ms);
      return `${card}\n${renderPerSampleTable(result.per_sample)}`;
    }
  }
}

export function renderModelOptions(models: ModelInfo[], selected: string): string {
  return models
    .map((m) => {
      const mark = m.reasoning ? " (reasoning)" : "";
      const sel = m.id === selected ? " selected" : "";
      return `<option value="${escapeHtml(m.id)}"${sel}>${escapeHtml(m.id)}${mark}</option>`;
    })
    .join("\n");
}
