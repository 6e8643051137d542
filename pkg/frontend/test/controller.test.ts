// @vitest-environment jsdom
import { afterEach, beforeEach, describe, expect, it, vi } from "vitest";

import { fragmentAt } from "../src/controller.js";
import { Harness, mount, press, settle, type } from "./helpers.js";

describe("fragmentAt", () => {
  it("takes the current line up to the cursor", () => {
    const text = "int x;\n  split str";
    expect(fragmentAt(text, text.length)).toEqual({ text: "split str", start: 9 });
  });

  it("ignores blank lines and marker syntax", () => {
    expect(fragmentAt("   ", 3)).toBeNull();
    expect(fragmentAt("?sort list?", 11)).toBeNull();
  });

  it("is null at the start of a line", () => {
    expect(fragmentAt("abc\n", 4)).toBeNull();
  });
});

describe("suggestion popup", () => {
  let h: Harness;

  beforeEach(() => {
    vi.useFakeTimers();
    h = mount();
  });

  afterEach(() => {
    vi.useRealTimers();
    vi.unstubAllGlobals();
  });

  it("opens while typing and filters by the fragment", async () => {
    type(h.editor, "split string by");
    await settle();
    expect(h.ui.isPopupOpen).toBe(true);
    const rows = [...h.el("popup").querySelectorAll("li .task")].map((n) => n.textContent);
    expect(rows).toEqual([
      "split string by whitespaces",
      "split string by comma",
      "split string by dot",
    ]);
  });

  it("debounces: one request for rapid keystrokes", async () => {
    for (const ch of "split") type(h.editor, ch);
    await settle();
    expect(h.service.suggestCalls).toEqual(["split"]);
  });

  it("discards stale responses by sequence", async () => {
    type(h.editor, "split string by w");
    await settle();
    type(h.editor, "hitespaces");
    await settle();
    const rows = [...h.el("popup").querySelectorAll("li .task")].map((n) => n.textContent);
    expect(rows).toEqual(["split string by whitespaces"]);
  });

  it("escape closes without touching the document", async () => {
    type(h.editor, "split string");
    await settle();
    const before = h.editor.value;
    press(h.editor, "Escape");
    expect(h.ui.isPopupOpen).toBe(false);
    expect(h.editor.value).toBe(before);
  });

  it("arrow keys move the highlight", async () => {
    type(h.editor, "split string by");
    await settle();
    press(h.editor, "ArrowDown");
    const highlighted = h.el("popup").querySelector("li.highlight .task");
    expect(highlighted?.textContent).toBe("split string by comma");
  });

  it("service failure shows a banner and closes the popup", async () => {
    h.service.failSuggest = true;
    type(h.editor, "split");
    await settle();
    expect(h.ui.isPopupOpen).toBe(false);
    expect(h.el("banner").hidden).toBe(false);
  });

  it("closes when the fragment goes away", async () => {
    type(h.editor, "split");
    await settle();
    expect(h.ui.isPopupOpen).toBe(true);
    type(h.editor, "\n");
    expect(h.ui.isPopupOpen).toBe(false);
  });
});

describe("sessions through the UI", () => {
  let h: Harness;

  beforeEach(() => {
    vi.useFakeTimers();
    h = mount();
  });

  afterEach(() => {
    vi.useRealTimers();
    vi.unstubAllGlobals();
  });

  async function startSession(): Promise<void> {
    type(h.editor, "    split string by w");
    await settle();
    press(h.editor, "Enter"); // selects the highlighted suggestion
    await settle(0);
  }

  it("selecting a suggestion inserts snippet plus source comment", async () => {
    await startSession();
    expect(h.editor.value).toContain("// source: https://stackoverflow.com/a/7899607");
    expect(h.editor.value).toContain('input.split("\\\\s+");');
    expect(h.editor.value).not.toContain("split string by w\n");
    expect(h.el("status").textContent).toBe("snippet 1 of 3");
  });

  it("document always equals the last service response", async () => {
    await startSession();
    const session = [...h.service.sessions.values()][0];
    expect(h.editor.value).toBe(
      session.before +
        [`// source: ${session.snippets[0].source_url}`, session.snippets[0].code]
          .join("\n" + session.indent) +
        session.after,
    );
  });

  it("cycle button advances and wraps with status i of n", async () => {
    await startSession();
    h.el("cycle").click();
    await settle(0);
    expect(h.el("status").textContent).toBe("snippet 2 of 3");
    h.el("cycle").click();
    h.el("cycle").click();
    await settle(0);
    expect(h.el("status").textContent).toBe("snippet 1 of 3");
  });

  it("ctrl+backtick cycles too", async () => {
    await startSession();
    press(h.editor, "`", { ctrlKey: true });
    await settle(0);
    expect(h.el("status").textContent).toBe("snippet 2 of 3");
  });

  it("restore puts the original query text back", async () => {
    await startSession();
    h.el("cycle").click();
    await settle(0);
    h.el("restore").click();
    await settle(0);
    expect(h.editor.value).toBe("    split string by whitespaces");
    expect(h.ui.activeSession).toBeNull();
  });

  it("marker invoke runs the question-marks origin", async () => {
    type(h.editor, "?add lines to text file?");
    await settle();
    h.el("invoke-marker").click();
    await settle(0);
    expect(h.editor.value).toContain("// source: https://stackoverflow.com/a/26575407");
    expect(h.el("status").textContent).toBe("snippet 1 of 2");
  });

  it("marker invoke without a marker shows a banner", async () => {
    type(h.editor, "no markers here");
    await settle();
    h.el("invoke-marker").click();
    await settle(0);
    expect(h.el("banner").hidden).toBe(false);
    expect(h.editor.value).toBe("no markers here");
  });

  it("expired session prompts to re-invoke", async () => {
    await startSession();
    h.service.sessions.clear();
    h.el("cycle").click();
    await settle(0);
    expect(h.el("banner").textContent).toContain("invoke the assist again");
    expect(h.ui.activeSession).toBeNull();
  });
});

describe("rating prompt", () => {
  let h: Harness;

  beforeEach(() => {
    vi.useFakeTimers();
    h = mount();
  });

  afterEach(() => {
    vi.useRealTimers();
    vi.unstubAllGlobals();
  });

  async function insertAndCommit(): Promise<void> {
    type(h.editor, "split string by w");
    await settle();
    press(h.editor, "Enter");
    await settle(0);
    press(h.editor, "Enter"); // first commit keystroke after insertion
  }

  it("appears on the first commit keystroke and posts the answer", async () => {
    await insertAndCommit();
    expect(h.el("rating").hidden).toBe(false);
    h.el("rate-yes").click();
    await settle(0);
    expect(h.service.ratings).toEqual([{ id: "fake-1", helpful: true }]);
    expect(h.el("rating").hidden).toBe(true);
  });

  it("never reappears for the same session", async () => {
    await insertAndCommit();
    h.el("rate-no").click();
    await settle(0);
    press(h.editor, "Enter");
    expect(h.el("rating").hidden).toBe(true);
    expect(h.service.ratings).toHaveLength(1);
  });

  it("dismissing records nothing", async () => {
    await insertAndCommit();
    h.el("rate-dismiss").click();
    await settle(0);
    expect(h.service.ratings).toHaveLength(0);
    press(h.editor, "Enter");
    expect(h.el("rating").hidden).toBe(true);
  });
});
