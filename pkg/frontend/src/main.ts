import { AssistApi } from "./api.js";
import { AssistUi } from "./controller.js";
import { APP_HTML } from "./markup.js";

const params = new URLSearchParams(window.location.search);
const baseUrl = params.get("service") ?? "http://127.0.0.1:8080";

const root = document.getElementById("app");
if (!root) throw new Error("missing #app root");
root.innerHTML = APP_HTML;

const ui = new AssistUi(root, new AssistApi(baseUrl));
ui.editor.value = [
  "// Type a task (e.g. \"split string by\") to open the content assist,",
  "// or write ?add lines to text file? and press Invoke.",
  "",
].join("\n");
ui.editor.focus();
