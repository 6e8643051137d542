import { ApiError, AssistApi, Origin, SessionState, Suggestion } from "./api.js";
import { debounce } from "./debounce.js";

export interface Fragment {
  text: string;
  start: number;
}

// The task fragment being typed: current line from its first non-space
// character to the cursor. Marker entry (?query?) is handled by the invoke
// button, not content assist.
export function fragmentAt(text: string, cursor: number): Fragment | null {
  const lineStart = text.lastIndexOf("\n", cursor - 1) + 1;
  let start = lineStart;
  while (start < cursor && /\s/.test(text[start])) start++;
  const fragment = text.slice(start, cursor);
  if (!fragment.trim() || fragment.includes("?") || fragment.includes("\n")) {
    return null;
  }
  return { text: fragment, start };
}

interface ActiveSession {
  id: string;
  index: number;
  count: number;
}

export class AssistUi {
  readonly editor: HTMLTextAreaElement;
  private readonly popup: HTMLUListElement;
  private readonly status: HTMLElement;
  private readonly banner: HTMLElement;
  private readonly rating: HTMLElement;

  private suggestions: Suggestion[] = [];
  private highlighted = 0;
  private popupOpen = false;
  private suggestSeq = 0;

  private session: ActiveSession | null = null;
  private ratingPending = false; // waiting for the first Enter after insertion
  private ratingPrompted = false; // the prompt never appears twice per session

  private readonly scheduleSuggest: ((fragment: Fragment) => void) & { cancel(): void };

  constructor(
    root: HTMLElement,
    private readonly api: AssistApi,
    private readonly suggestLimit = 10,
    debounceMs = 150,
  ) {
    const pick = <T extends HTMLElement>(role: string): T => {
      const el = root.querySelector<T>(`[data-role="${role}"]`);
      if (!el) throw new Error(`missing element ${role}`);
      return el;
    };
    this.editor = pick<HTMLTextAreaElement>("editor");
    this.popup = pick<HTMLUListElement>("popup");
    this.status = pick("status");
    this.banner = pick("banner");
    this.rating = pick("rating");

    this.scheduleSuggest = debounce((fragment: Fragment) => {
      void this.fetchSuggestions(fragment);
    }, debounceMs);

    this.editor.addEventListener("input", () => this.onInput());
    this.editor.addEventListener("keydown", (e) => this.onKeydown(e));
    this.editor.addEventListener("blur", () => this.closePopup());
    this.popup.addEventListener("mousedown", (e) => e.preventDefault());
    this.popup.addEventListener("click", (e) => this.onPopupClick(e));
    pick("cycle").addEventListener("click", () => void this.cycle());
    pick("restore").addEventListener("click", () => void this.restoreOriginal());
    pick("invoke-marker").addEventListener("click", () => void this.invokeMarker());
    pick("rate-yes").addEventListener("click", () => void this.sendRating(true));
    pick("rate-no").addEventListener("click", () => void this.sendRating(false));
    pick("rate-dismiss").addEventListener("click", () => this.hideRatingPrompt());
  }

  // -- typing & popup --------------------------------------------------

  private onInput(): void {
    const fragment = fragmentAt(this.editor.value, this.editor.selectionStart);
    if (!fragment) {
      this.scheduleSuggest.cancel();
      this.closePopup();
      return;
    }
    this.scheduleSuggest(fragment);
  }

  private async fetchSuggestions(fragment: Fragment): Promise<void> {
    const seq = ++this.suggestSeq;
    let suggestions: Suggestion[];
    try {
      suggestions = await this.api.suggest(fragment.text, this.suggestLimit);
    } catch (err) {
      this.closePopup();
      this.showBanner(err);
      return;
    }
    if (seq !== this.suggestSeq) return; // superseded by newer keystrokes
    this.suggestions = suggestions;
    this.highlighted = 0;
    if (suggestions.length === 0) {
      this.closePopup();
      return;
    }
    this.renderPopup();
  }

  private renderPopup(): void {
    this.popup.innerHTML = "";
    this.suggestions.forEach((s, i) => {
      const item = document.createElement("li");
      item.dataset.index = String(i);
      item.classList.toggle("highlight", i === this.highlighted);
      const text = document.createElement("span");
      text.className = "task";
      text.textContent = s.text;
      const count = document.createElement("span");
      count.className = "count";
      count.textContent = String(s.source_count);
      item.append(text, count);
      this.popup.append(item);
    });
    this.popup.hidden = false;
    this.popupOpen = true;
  }

  private closePopup(): void {
    this.popup.hidden = true;
    this.popup.innerHTML = "";
    this.popupOpen = false;
    this.suggestions = [];
  }

  private moveHighlight(delta: number): void {
    const n = this.suggestions.length;
    this.highlighted = (this.highlighted + delta + n) % n;
    this.popup.querySelectorAll("li").forEach((li, i) => {
      li.classList.toggle("highlight", i === this.highlighted);
    });
  }

  private onPopupClick(event: MouseEvent): void {
    const item = (event.target as HTMLElement).closest("li");
    if (!item || item.dataset.index === undefined) return;
    void this.select(this.suggestions[Number(item.dataset.index)]);
  }

  private onKeydown(event: KeyboardEvent): void {
    if (this.popupOpen) {
      if (event.key === "ArrowDown" || event.key === "ArrowUp") {
        event.preventDefault();
        this.moveHighlight(event.key === "ArrowDown" ? 1 : -1);
        return;
      }
      if (event.key === "Enter") {
        event.preventDefault();
        void this.select(this.suggestions[this.highlighted]);
        return;
      }
      if (event.key === "Escape") {
        event.preventDefault();
        this.scheduleSuggest.cancel();
        this.closePopup();
        return;
      }
      return;
    }
    if (event.key === "`" && event.ctrlKey) {
      event.preventDefault();
      void this.cycle();
      return;
    }
    if (event.key === "Enter" && this.session && this.ratingPending && !this.ratingPrompted) {
      // The commit keystroke itself goes through; the prompt rides along.
      this.showRatingPrompt();
    }
  }

  // -- sessions ----------------------------------------------------------

  private async select(suggestion: Suggestion): Promise<void> {
    this.scheduleSuggest.cancel();
    this.closePopup();
    const cursor = this.editor.selectionStart;
    const fragment = fragmentAt(this.editor.value, cursor);
    if (!fragment) return;

    // Completing the fragment into the chosen task is typing on the user's
    // behalf; the snippet content below still only comes from the service.
    const value = this.editor.value;
    this.editor.value = value.slice(0, fragment.start) + suggestion.text + value.slice(cursor);
    const region = { start: fragment.start, length: suggestion.text.length };
    await this.beginSession({
      query: suggestion.text,
      origin: "content-assist" as Origin,
      document: this.editor.value,
      region,
    });
  }

  private async invokeMarker(): Promise<void> {
    await this.beginSession({
      query: "",
      origin: "question-marks" as Origin,
      document: this.editor.value,
    });
  }

  private async beginSession(body: {
    query: string;
    origin: Origin;
    document: string;
    region?: { start: number; length: number };
  }): Promise<void> {
    let state: SessionState;
    try {
      state = await this.api.beginSession(body);
    } catch (err) {
      this.showBanner(err);
      return;
    }
    this.clearBanner();
    this.hideRatingPrompt();
    if (state.count === 0) {
      this.session = null;
      this.ratingPending = false;
      this.setStatus("no snippet found");
      return;
    }
    this.applyDocument(state.document);
    this.session = { id: state.id, index: state.index, count: state.count };
    this.ratingPending = true;
    this.ratingPrompted = false;
    this.setStatus(`snippet ${state.index + 1} of ${state.count}`);
  }

  private async cycle(): Promise<void> {
    if (!this.session) return;
    try {
      const update = await this.api.nextSnippet(this.session.id);
      this.applyDocument(update.document);
      this.session = { ...this.session, index: update.index, count: update.count };
      this.setStatus(`snippet ${update.index + 1} of ${update.count}`);
      this.clearBanner();
    } catch (err) {
      this.handleSessionError(err);
    }
  }

  private async restoreOriginal(): Promise<void> {
    if (!this.session) return;
    try {
      const result = await this.api.restore(this.session.id);
      this.applyDocument(result.document);
      this.endSession();
      this.clearBanner();
    } catch (err) {
      this.handleSessionError(err);
    }
  }

  private handleSessionError(err: unknown): void {
    if (err instanceof ApiError && err.status === 404) {
      this.endSession();
      this.showBanner("session expired; invoke the assist again");
      return;
    }
    this.showBanner(err);
  }

  private endSession(): void {
    this.session = null;
    this.ratingPending = false;
    this.hideRatingPrompt();
    this.setStatus("");
  }

  // Document mutations originate from service responses only (plus the
  // user's own keystrokes); this is the single write point for the former.
  private applyDocument(text: string): void {
    this.editor.value = text;
  }

  // -- rating ------------------------------------------------------------

  private showRatingPrompt(): void {
    this.ratingPrompted = true;
    this.rating.hidden = false;
  }

  private hideRatingPrompt(): void {
    this.rating.hidden = true;
  }

  private async sendRating(helpful: boolean): Promise<void> {
    if (!this.session || !this.ratingPending) {
      this.hideRatingPrompt();
      return;
    }
    try {
      await this.api.rate(this.session.id, helpful);
      this.ratingPending = false;
      this.hideRatingPrompt();
      this.clearBanner();
    } catch (err) {
      // Keep the prompt so the answer is not lost; the user can retry.
      this.showBanner(err);
    }
  }

  // -- chrome ------------------------------------------------------------

  private setStatus(text: string): void {
    this.status.textContent = text;
  }

  private showBanner(err: unknown): void {
    this.banner.textContent = err instanceof Error ? err.message : String(err);
    this.banner.hidden = false;
  }

  private clearBanner(): void {
    this.banner.hidden = true;
    this.banner.textContent = "";
  }

  // test hooks
  get activeSession(): ActiveSession | null {
    return this.session;
  }

  get isPopupOpen(): boolean {
    return this.popupOpen;
  }
}
