import type { AnalyzeBagResponse, AnalyzeResponse, PairInput } from "./types.js";

export type RequestState = "idle" | "running" | "done" | "error";

export interface AnalysisForm {
  problem: string;
  code: string;
  model: string;
  reasoning: boolean;
}

export interface AnalysisView {
  state: RequestState;
  form: AnalysisForm;
  result: AnalyzeResponse | null;
  error: string | null;
}

export function initialView(form?: Partial<AnalysisForm>): AnalysisView {
  return {
    state: "idle",
    form: { problem: "", code: "", model: "", reasoning: false, ...form },
    result: null,
    error: null,
  };
}

export function canSubmit(form: AnalysisForm): boolean {
  return form.problem.trim() !== "" && form.code.trim() !== "" && form.model !== "";
}

export function formEdited(view: AnalysisView, patch: Partial<AnalysisForm>): AnalysisView {
  return { ...view, form: { ...view.form, ...patch } };
}

export function requestStarted(view: AnalysisView): AnalysisView {
  return { ...view, state: "running", result: null, error: null };
}

export function requestSucceeded(view: AnalysisView, result: AnalyzeResponse): AnalysisView {
  return { ...view, state: "done", result, error: null };
}

/** Errors keep the form intact so the user can retry after fixing nothing. */
export function requestFailed(view: AnalysisView, message: string): AnalysisView {
  return { ...view, state: "error", result: null, error: message };
}

export interface BagAnalysisView {
  state: RequestState;
  pairs: PairInput[];
  model: string;
  result: AnalyzeBagResponse | null;
  error: string | null;
}

export function initialBagView(): BagAnalysisView {
  return { state: "idle", pairs: [{ problem: "", code: "" }], model: "", result: null, error: null };
}

export function canSubmitBag(view: BagAnalysisView): boolean {
  return (
    view.model !== "" &&
    view.pairs.length > 0 &&
    view.pairs.every((p) => p.problem.trim() !== "" && p.code.trim() !== "")
  );
}

export function bagRequestStarted(view: BagAnalysisView): BagAnalysisView {
  return { ...view, state: "running", result: null, error: null };
}

export function bagRequestSucceeded(view: BagAnalysisView, result: AnalyzeBagResponse): BagAnalysisView {
  return { ...view, state: "done", result, error: null };
}

export function bagRequestFailed(view: BagAnalysisView, message: string): BagAnalysisView {
  return { ...view, state: "error", result: null, error: message };
}

/** One in-flight analysis per view: starting a new request aborts the
 * previous controller and hands back a fresh one. */
export function supersede(previous: AbortController | null): AbortController {
  if (previous !== null) {
    previous.abort();
  }
  return new AbortController();
}
