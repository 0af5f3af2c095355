/**
 * The translate page: editor with character palette, highlighted context,
 * version-aware submit, comments, and a review form for the current text.
 */

import { api, ApiError, type ItemDetail, type TranslationSlot } from "./api.js";
import { errorBanner, infoBanner, showIn } from "./banner.js";
import { insertAtCaret } from "./caret.js";
import { signedIn } from "./session.js";
import { clear, el, renderHighlighted } from "./text.js";

const RUBRIC_FIELDS: [string, number][] = [
  ["structure", 3],
  ["cognates", 3],
  ["meanings", 1],
  ["spellings", 1],
  ["consistency", 1],
  ["punctuation", 1],
  ["message", 3],
];

interface EditorState {
  itemId: string;
  lang: string;
  baseVersion: number | null;
}

function paletteBar(palette: string[], area: HTMLTextAreaElement): HTMLElement {
  const bar = el("div", { class: "palette", role: "toolbar" });
  for (const ch of palette) {
    const button = el("button", { type: "button", class: "palette-key" }, ch);
    button.addEventListener("click", () => insertAtCaret(area, ch));
    bar.appendChild(button);
  }
  return bar;
}

function conflictPanel(
  state: EditorState,
  err: ApiError,
  onLoadLatest: () => void
): HTMLElement {
  const newerText = typeof err.detail?.current_text === "string" ? err.detail.current_text : "";
  const newerVersion =
    typeof err.detail?.current_version === "number" ? err.detail.current_version : null;
  const panel = el(
    "div",
    { class: "conflict", role: "alertdialog" },
    el("h4", {}, "Someone edited first"),
    el(
      "p",
      {},
      "Another translator saved a newer version while you were working. " +
        "Review their text below, fold in what you need, then submit again."
    ),
    el("blockquote", { class: "newer-text" }, newerText)
  );
  const adopt = el("button", { type: "button", class: "load-latest" }, "Work from the newer text");
  adopt.addEventListener("click", () => {
    if (newerVersion !== null) state.baseVersion = newerVersion;
    onLoadLatest();
  });
  const keep = el("button", { type: "button", class: "keep-mine" }, "Keep my draft, retry on top");
  keep.addEventListener("click", () => {
    if (newerVersion !== null) state.baseVersion = newerVersion;
    panel.remove();
  });
  panel.append(adopt, " ", keep);
  return panel;
}

function editorSection(
  item: ItemDetail,
  slot: TranslationSlot,
  lang: string,
  palette: string[],
  reloadPage: () => void
): HTMLElement {
  const state: EditorState = {
    itemId: item.id,
    lang,
    baseVersion: slot.current ? slot.current.version : null,
  };

  const section = el("section", { class: "editor" });
  section.appendChild(el("h3", {}, "Your translation"));
  if (slot.current) {
    section.appendChild(
      el(
        "p",
        { class: "current-version" },
        `Current version ${slot.current.version} by ${slot.current.author_id}:`
      )
    );
    section.appendChild(el("blockquote", {}, slot.current.text));
  }

  const area = el("textarea", { class: "draft", rows: "4" });
  area.value = slot.current ? slot.current.text : "";
  const fieldError = el("div", { class: "field-error", role: "alert" });
  const panelSlot = el("div", { class: "conflict-slot" });
  const submit = el("button", { type: "button", class: "submit" }, "Submit translation");

  submit.addEventListener("click", async () => {
    clear(fieldError);
    clear(panelSlot);
    try {
      const saved = await api.submitTranslation(state.itemId, state.lang, area.value, state.baseVersion);
      state.baseVersion = saved.version;
      showIn(panelSlot, infoBanner(`Saved as version ${saved.version}.`));
    } catch (err) {
      if (err instanceof ApiError && err.code === "conflict") {
        panelSlot.appendChild(
          conflictPanel(state, err, () => {
            const newer = err.detail?.current_text;
            if (typeof newer === "string") area.value = newer;
            clear(panelSlot);
          })
        );
      } else if (err instanceof ApiError && err.code === "validation") {
        fieldError.appendChild(document.createTextNode(err.message));
      } else {
        showIn(panelSlot, errorBanner(err, reloadPage));
      }
    }
  });

  section.append(paletteBar(palette, area), area, fieldError, panelSlot, submit);
  return section;
}

function reviewSection(slot: TranslationSlot): HTMLElement {
  const section = el("section", { class: "review" });
  section.appendChild(el("h3", {}, "Review this translation"));
  if (!slot.current) {
    section.appendChild(el("p", { class: "empty" }, "Nothing to review yet."));
    return section;
  }
  const translationId = slot.current.translation_id;
  const inputs = new Map<string, HTMLInputElement>();
  const table = el("table", { class: "rubric" });
  for (const [name, cap] of RUBRIC_FIELDS) {
    const input = el("input", { type: "number", min: "0", max: String(cap), value: "0" });
    inputs.set(name, input);
    table.appendChild(
      el("tr", {}, el("td", {}, name), el("td", {}, input), el("td", {}, `0 to ${cap}`))
    );
  }
  const body = el("textarea", { class: "review-body", rows: "2" });
  const slotEl = el("div", { class: "banner-slot" });
  const send = el("button", { type: "button", class: "send-review" }, "Submit review");
  send.addEventListener("click", async () => {
    const rubric: Record<string, number> = {};
    for (const [name, input] of inputs) rubric[name] = Number(input.value);
    try {
      const result = await api.submitReview(translationId, rubric, body.value);
      showIn(slotEl, infoBanner(`Review recorded: ${result.total} of 13.`));
    } catch (err) {
      showIn(slotEl, errorBanner(err));
    }
  });
  section.append(table, body, slotEl, send);
  return section;
}

function commentsSection(itemId: string, lang: string): HTMLElement {
  const section = el("section", { class: "comments" });
  section.appendChild(el("h3", {}, "Comments"));
  const list = el("ul", { class: "comment-list" });
  const slot = el("div", { class: "banner-slot" });
  section.append(slot, list);

  const load = async () => {
    try {
      const comments = await api.comments(itemId, lang);
      clear(list);
      for (const comment of comments) {
        list.appendChild(
          el(
            "li",
            { class: "comment" },
            el("strong", {}, comment.author_id),
            ": ",
            comment.body
          )
        );
      }
      if (comments.length === 0) list.appendChild(el("li", { class: "empty" }, "No comments yet."));
    } catch (err) {
      showIn(slot, errorBanner(err, () => void load()));
    }
  };
  void load();

  const draft = el("textarea", { class: "comment-draft", rows: "2" });
  const post = el("button", { type: "button", class: "post-comment" }, "Post comment");
  post.addEventListener("click", async () => {
    try {
      await api.addComment(itemId, lang, draft.value);
      draft.value = "";
      await load();
    } catch (err) {
      showIn(slot, errorBanner(err));
    }
  });
  section.append(draft, post);
  return section;
}

export async function renderTranslatePage(root: Element, itemId: string, lang: string): Promise<void> {
  clear(root);
  const slot = el("div", { class: "banner-slot" });
  root.appendChild(slot);
  const reload = () => void renderTranslatePage(root, itemId, lang);

  let item: ItemDetail;
  let translations: TranslationSlot;
  let context;
  let languages;
  try {
    [item, translations, context, languages] = await Promise.all([
      api.item(itemId),
      api.translations(itemId, lang),
      api.context(itemId, lang),
      api.languages(),
    ]);
  } catch (err) {
    showIn(slot, errorBanner(err, reload));
    return;
  }
  const palette = languages.find((l) => l.code === lang)?.palette ?? [];

  root.appendChild(el("h2", {}, `Translate into ${lang}`));
  root.appendChild(el("p", { class: "source" }, el("strong", {}, "Source: "), item.source_text));

  const snippet = el("p", { class: "context-snippet" });
  snippet.appendChild(renderHighlighted(context.snippet));
  root.appendChild(snippet);

  const preview = el("p", { class: "page-preview" });
  preview.appendChild(renderHighlighted(context.page_preview));
  root.appendChild(
    el("details", {}, el("summary", {}, item.page ? `Page: ${item.page.title}` : "Page"), preview)
  );

  if (signedIn()) {
    root.appendChild(editorSection(item, translations, lang, palette, reload));
    root.appendChild(reviewSection(translations));
    root.appendChild(commentsSection(itemId, lang));
  } else {
    root.appendChild(infoBanner("Sign in to translate, review, or comment."));
  }

  root.appendChild(
    el(
      "p",
      { class: "help-links" },
      el("a", { href: "/docs/tutorial", target: "_blank" }, "Tutorial"),
      " · ",
      el("a", { href: "/docs/faq", target: "_blank" }, "FAQ")
    )
  );
}
