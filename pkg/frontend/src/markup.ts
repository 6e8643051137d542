// Shared between index.html bootstrap and the jsdom tests so both drive
// exactly the same DOM.

export const APP_HTML = `
<div class="assist-app">
  <div class="toolbar">
    <button type="button" data-role="invoke-marker" title="Process the first ?query? marker">
      Invoke ?query?
    </button>
    <button type="button" data-role="cycle" title="Next snippet (Ctrl+\`)">Next snippet</button>
    <button type="button" data-role="restore">Restore</button>
    <span data-role="status" class="status"></span>
  </div>
  <div class="editor-wrap">
    <textarea data-role="editor" spellcheck="false" rows="18"></textarea>
    <ul data-role="popup" class="popup" hidden></ul>
  </div>
  <div data-role="banner" class="banner" role="alert" hidden></div>
  <div data-role="rating" class="rating" hidden>
    <span>Was this code snippet helpful?</span>
    <button type="button" data-role="rate-yes">Yes</button>
    <button type="button" data-role="rate-no">No</button>
    <button type="button" data-role="rate-dismiss" aria-label="Dismiss">&#10005;</button>
  </div>
</div>
`;
