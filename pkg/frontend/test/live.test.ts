// @vitest-environment jsdom
//
// Full loop against a real running service (no mocks): set
// SNIPASSIST_SERVICE to its base URL, e.g. via scripts/ui_e2e.py, which
// also verifies the telemetry record this test produces. Skipped when the
// variable is absent so the offline suite stays self-contained.
import { afterEach, beforeEach, describe, expect, it } from "vitest";

import { AssistApi } from "../src/api.js";
import { AssistUi } from "../src/controller.js";
import { APP_HTML } from "../src/markup.js";

const serviceUrl = process.env.SNIPASSIST_SERVICE;

function sleep(ms: number): Promise<void> {
  return new Promise((resolve) => setTimeout(resolve, ms));
}

async function waitFor(check: () => boolean, timeoutMs = 5000): Promise<void> {
  const deadline = Date.now() + timeoutMs;
  while (!check()) {
    if (Date.now() > deadline) throw new Error("timed out waiting for condition");
    await sleep(25);
  }
}

describe.skipIf(!serviceUrl)("live service loop", () => {
  let ui: AssistUi;
  let root: HTMLElement;

  const el = (role: string) => root.querySelector<HTMLElement>(`[data-role="${role}"]`)!;

  beforeEach(() => {
    document.body.innerHTML = `<div id="app">${APP_HTML}</div>`;
    root = document.getElementById("app")!;
    ui = new AssistUi(root, new AssistApi(serviceUrl!), 10, 20);
  });

  afterEach(() => {
    document.body.innerHTML = "";
  });

  function type(text: string): void {
    ui.editor.value += text;
    ui.editor.selectionStart = ui.editor.selectionEnd = ui.editor.value.length;
    ui.editor.dispatchEvent(new Event("input", { bubbles: true }));
  }

  function press(key: string, init: KeyboardEventInit = {}): void {
    ui.editor.dispatchEvent(
      new KeyboardEvent("keydown", { key, bubbles: true, cancelable: true, ...init }),
    );
  }

  it("type, pick, insert, cycle, rate against the fixture corpus", async () => {
    type("split string by");
    await waitFor(() => ui.isPopupOpen);
    const rows = [...el("popup").querySelectorAll("li .task")].map((n) => n.textContent!);
    expect(rows.length).toBeGreaterThan(0);
    for (const row of rows) expect(row.startsWith("split string by")).toBe(true);

    press("Enter");
    await waitFor(() => ui.activeSession !== null);
    expect(ui.editor.value).toContain("// source: https://stackoverflow.com/a/");
    const count = ui.activeSession!.count;
    expect(el("status").textContent).toBe(`snippet 1 of ${count}`);

    el("cycle").click();
    await waitFor(() => ui.activeSession!.index === 1);
    expect(el("status").textContent).toBe(`snippet 2 of ${count}`);

    press("Enter");
    expect(el("rating").hidden).toBe(false);
    el("rate-yes").click();
    await waitFor(() => el("rating").hidden);
  });
});
