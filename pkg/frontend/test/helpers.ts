import { vi } from "vitest";

import { AssistApi } from "../src/api.js";
import { AssistUi } from "../src/controller.js";
import { APP_HTML } from "../src/markup.js";
import { FakeService } from "./fake_service.js";

export interface Harness {
  ui: AssistUi;
  service: FakeService;
  editor: HTMLTextAreaElement;
  el: (role: string) => HTMLElement;
}

export function mount(): Harness {
  const service = new FakeService();
  vi.stubGlobal("fetch", service.fetch);
  document.body.innerHTML = `<div id="app">${APP_HTML}</div>`;
  const root = document.getElementById("app")!;
  const ui = new AssistUi(root, new AssistApi("http://fake"), 10, 150);
  const el = (role: string) => root.querySelector<HTMLElement>(`[data-role="${role}"]`)!;
  return { ui, service, editor: ui.editor, el };
}

export function type(editor: HTMLTextAreaElement, text: string): void {
  editor.value += text;
  editor.selectionStart = editor.selectionEnd = editor.value.length;
  editor.dispatchEvent(new Event("input", { bubbles: true }));
}

export function press(
  editor: HTMLTextAreaElement,
  key: string,
  init: KeyboardEventInit = {},
): void {
  editor.dispatchEvent(new KeyboardEvent("keydown", { key, bubbles: true, cancelable: true, ...init }));
}

export async function settle(ms = 200): Promise<void> {
  await vi.advanceTimersByTimeAsync(ms);
  // flush pending promise jobs queued by the mocked fetch
  for (let i = 0; i < 8; i++) await Promise.resolve();
}
