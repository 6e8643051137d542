// @vitest-environment jsdom
//
// Full assist loop in one pass, mirroring a user session end to end:
// type a partial task, pick a suggestion, watch the snippet land with its
// source comment, cycle to "2 of n", answer the helpfulness prompt, and
// confirm exactly one telemetry record was posted.
import { afterEach, beforeEach, expect, it, vi } from "vitest";

import { Harness, mount, press, settle, type } from "./helpers.js";

let h: Harness;

beforeEach(() => {
  vi.useFakeTimers();
  h = mount();
});

afterEach(() => {
  vi.useRealTimers();
  vi.unstubAllGlobals();
});

it("runs the whole loop: type, pick, insert, cycle, rate", async () => {
  type(h.editor, "split string by");
  await settle();

  // popup lists matching tasks
  expect(h.ui.isPopupOpen).toBe(true);
  const rows = [...h.el("popup").querySelectorAll("li .task")].map((n) => n.textContent);
  expect(rows).toContain("split string by whitespaces");
  expect(rows.every((r) => r!.startsWith("split string by"))).toBe(true);

  // selecting inserts snippet + source comment from the service response
  press(h.editor, "Enter");
  await settle(0);
  expect(h.ui.isPopupOpen).toBe(false);
  expect(h.editor.value).toContain("// source: https://stackoverflow.com/a/7899607");
  expect(h.editor.value).toContain("input.split");
  expect(h.el("status").textContent).toBe("snippet 1 of 3");

  // one cycle shows 2 of n with the next candidate
  h.el("cycle").click();
  await settle(0);
  expect(h.el("status").textContent).toBe("snippet 2 of 3");
  expect(h.editor.value).toContain("StringTokenizer");

  // the helpfulness prompt rides on the first commit keystroke, once
  press(h.editor, "Enter");
  expect(h.el("rating").hidden).toBe(false);
  h.el("rate-yes").click();
  await settle(0);
  expect(h.service.ratings).toEqual([{ id: "fake-1", helpful: true }]);
  press(h.editor, "Enter");
  expect(h.el("rating").hidden).toBe(true);
  expect(h.service.ratings).toHaveLength(1);
});
