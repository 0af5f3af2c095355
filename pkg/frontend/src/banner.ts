/** Inline error banner with an optional retry action. */

import { ApiError } from "./api.js";
import { clear, el } from "./text.js";

export function errorBanner(err: unknown, retry?: () => void): HTMLElement {
  const message =
    err instanceof ApiError
      ? err.status === 0
        ? "The server is not responding. Your work stays in the form; try again in a moment."
        : err.message
      : String(err);
  const banner = el("div", { class: "banner error", role: "alert" }, message);
  if (retry) {
    const button = el("button", { type: "button" }, "Retry");
    button.addEventListener("click", retry);
    banner.appendChild(textSpacer());
    banner.appendChild(button);
  }
  return banner;
}

export function infoBanner(message: string): HTMLElement {
  return el("div", { class: "banner info", role: "status" }, message);
}

function textSpacer(): Text {
  return document.createTextNode(" ");
}

/** Replace the contents of a slot with a single banner. */
export function showIn(slot: Element, banner: HTMLElement): void {
  clear(slot);
  slot.appendChild(banner);
}
