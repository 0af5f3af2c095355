/** Work queue: the items of one language in the order the server ranked them. */

import { api, type QueueItem } from "./api.js";
import { errorBanner, showIn } from "./banner.js";
import { clear, el } from "./text.js";

export type Filter = "all" | "untranslated" | "translated";

function statusBadge(status: string): HTMLElement {
  return el("span", { class: `badge status-${status}` }, status);
}

function row(item: QueueItem, lang: string): HTMLElement {
  const link = el(
    "a",
    { href: `#/translate/${encodeURIComponent(item.id)}/${encodeURIComponent(lang)}` },
    item.source_text
  );
  return el(
    "li",
    { class: "queue-row", "data-item-id": item.id },
    link,
    " ",
    statusBadge(item.status),
    " ",
    // priority comes straight off the wire; the client never recomputes it
    el("span", { class: "priority" }, String(item.priority))
  );
}

export function renderQueue(root: Element, lang: string, filter: Filter = "all"): Promise<void> {
  clear(root);
  const heading = el("h2", {}, `Work queue: ${lang}`);
  const controls = el("div", { class: "queue-controls" });
  const list = el("ul", { class: "queue" });
  const slot = el("div", { class: "banner-slot" });
  root.append(heading, controls, slot, list);

  const filterBox = el("select", { class: "queue-filter" });
  for (const value of ["all", "untranslated", "translated"] as const) {
    const option = el("option", { value }, value);
    if (value === filter) option.setAttribute("selected", "selected");
    filterBox.appendChild(option);
  }
  filterBox.addEventListener("change", () => {
    void renderQueue(root, lang, filterBox.value as Filter);
  });

  const randomButton = el("button", { type: "button", class: "random-item" }, "Random item");
  randomButton.addEventListener("click", async () => {
    try {
      const pick = await api.randomItem(lang);
      location.hash = `#/translate/${encodeURIComponent(pick.item_id)}/${encodeURIComponent(lang)}`;
    } catch (err) {
      showIn(slot, errorBanner(err));
    }
  });
  controls.append(filterBox, " ", randomButton);

  const load = async () => {
    try {
      const items = await api.items(lang, filter);
      clear(list);
      for (const item of items) list.appendChild(row(item, lang));
      if (items.length === 0) {
        list.appendChild(el("li", { class: "empty" }, "Nothing to show for this filter."));
      }
    } catch (err) {
      showIn(slot, errorBanner(err, () => void load()));
    }
  };
  return load();
}
