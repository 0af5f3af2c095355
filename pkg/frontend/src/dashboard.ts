/**
 * Front page: one progress meter per language, plus the signed-in member's
 * binder (authored work, watch notifications).
 */

import { api, type Progress } from "./api.js";
import { errorBanner, showIn } from "./banner.js";
import { pendingCount, refreshInbox, takeAll } from "./inbox.js";
import { signedIn } from "./session.js";
import { clear, el } from "./text.js";

function meter(progress: Progress): HTMLElement {
  const bar = el("div", { class: "meter", role: "meter" });
  const fill = el("span", { class: "meter-fill" });
  // width comes from the server's percent; the label is its display string verbatim
  fill.style.width = `${progress.percent}%`;
  bar.appendChild(fill);
  return el(
    "div",
    { class: "language-meter", "data-lang": progress.lang },
    el("h3", {}, progress.lang),
    bar,
    el("span", { class: "meter-label" }, `${progress.display}%`),
    el(
      "span",
      { class: "meter-counts" },
      ` ${progress.translated_count} of ${progress.total_count} translated`
    )
  );
}

export async function renderDashboard(root: Element): Promise<void> {
  clear(root);
  const slot = el("div", { class: "banner-slot" });
  const meters = el("div", { class: "meters" });
  root.append(el("h2", {}, "Translation progress"), slot, meters);

  try {
    const languages = await api.languages();
    if (languages.length === 0) {
      meters.appendChild(el("p", { class: "empty" }, "No languages are configured yet."));
    } else {
      const rows = await Promise.all(languages.map((lang) => api.progress(lang.code)));
      for (const progress of rows) meters.appendChild(meter(progress));
    }
  } catch (err) {
    showIn(slot, errorBanner(err, () => void renderDashboard(root)));
    return;
  }

  if (signedIn()) {
    try {
      await refreshInbox();
    } catch {
      // a failed binder fetch must not take down the meters
    }
    const badge = el("span", { class: "notification-badge" }, String(pendingCount()));
    const link = el("a", { href: "#/binder" }, "My binder ", badge);
    root.appendChild(el("p", { class: "binder-link" }, link));
  }
}

export async function renderBinder(root: Element): Promise<void> {
  clear(root);
  const slot = el("div", { class: "banner-slot" });
  root.append(el("h2", {}, "My binder"), slot);

  try {
    const binder = await refreshInbox();
    const fresh = takeAll();

    const noteList = el("ul", { class: "notifications" });
    for (const note of fresh) {
      noteList.appendChild(
        el(
          "li",
          {},
          `"${note.text}" is now version ${note.version} of ${note.item_id} (${note.lang})`
        )
      );
    }
    if (fresh.length === 0) noteList.appendChild(el("li", { class: "empty" }, "Nothing new."));
    root.append(el("h3", {}, "Watched items that changed"), noteList);

    const workList = el("ul", { class: "authored" });
    for (const entry of binder.translated_items) {
      workList.appendChild(
        el(
          "li",
          {},
          el(
            "a",
            {
              href: `#/translate/${encodeURIComponent(entry.item_id)}/${encodeURIComponent(entry.lang)}`,
            },
            `${entry.item_id} (${entry.lang}) v${entry.version}`
          )
        )
      );
    }
    if (binder.translated_items.length === 0) {
      workList.appendChild(el("li", { class: "empty" }, "No translations yet."));
    }
    root.append(el("h3", {}, "My translations"), workList);
  } catch (err) {
    showIn(slot, errorBanner(err, () => void renderBinder(root)));
  }
}
