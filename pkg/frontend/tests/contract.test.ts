import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { renderAnalysisResult } from "../src/render.js";
import { initialView, requestFailed, requestStarted, requestSucceeded } from "../src/state.js";
import { FIGURE_PREDICTION, StubServer } from "./stub-server.js";

/** Full client-to-card contract runs: the view pipeline displays exactly
 * what the service returned; no analysis happens client-side. */
describe("figure fixture end to end against the stub", () => {
  let stub: StubServer;
  let client: ApiClient;

  beforeEach(async () => {
    stub = new StubServer();
    await stub.start();
    client = new ApiClient(stub.baseUrl);
  });

  afterEach(async () => {
    await stub.stop();
  });

  it("renders a misconception card for the factorial fixture", async () => {
    let view = initialView({
      problem: "Write the factorial(n) function.",
      code: "def factorial(n):\n    fact = 1\n    for i in range(n):\n        fact = fact * i\n    return fact\n",
      model: "mock",
    });
    view = requestStarted(view);
    const result = await client.analyze(
      view.form.problem,
      view.form.code,
      view.form.model,
      view.form.reasoning,
    );
    view = requestSucceeded(view, result);

    const html = renderAnalysisResult(view);
    expect(html).toContain("card-misconception");
    expect(html).toContain(FIGURE_PREDICTION.description);
    expect(html).toContain("Reasoning trace");

    // pure API client: the card text is the service payload, untransformed
    expect(result.prediction).toEqual(FIGURE_PREDICTION);
  });

  it("shows the error banner and preserves the form on a 502", async () => {
    stub.behavior.failWith = 502;
    let view = initialView({ problem: "p", code: "the student code", model: "mock" });
    view = requestStarted(view);
    try {
      await client.analyze(view.form.problem, view.form.code, view.form.model, false);
      expect.unreachable("expected a 502");
    } catch (error) {
      view = requestFailed(view, (error as Error).message);
    }
    const html = renderAnalysisResult(view);
    expect(html).toContain("banner-error");
    expect(html).toContain("provider failure");
    expect(view.form.code).toBe("the student code");
  });

  it("never calls the service when inputs are empty", async () => {
    const { canSubmit } = await import("../src/state.js");
    const view = initialView({ problem: "", code: "", model: "mock" });
    expect(canSubmit(view.form)).toBe(false);
    expect(stub.requests.filter((r) => r.method === "POST")).toHaveLength(0);
  });
});
