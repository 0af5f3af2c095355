/** Hash-routed shell: nav bar, sign-in box, and the page views. */

import { api, ApiError } from "./api.js";
import { errorBanner, showIn } from "./banner.js";
import { renderPolls, renderForums } from "./community.js";
import { renderBinder, renderDashboard } from "./dashboard.js";
import { resetInbox } from "./inbox.js";
import { renderQueue } from "./queue.js";
import { beginSession, currentName, endSession, restoreSession, signedIn } from "./session.js";
import { clear, el } from "./text.js";
import { renderTranslatePage } from "./translate.js";

function navBar(onChange: () => void): HTMLElement {
  const nav = el(
    "nav",
    { class: "topnav" },
    el("a", { href: "#/" }, "Dashboard"),
    " ",
    el("a", { href: "#/queue" }, "Queue"),
    " ",
    el("a", { href: "#/forums" }, "Forums"),
    " ",
    el("a", { href: "#/polls" }, "Polls")
  );
  const account = el("span", { class: "account" });
  nav.appendChild(account);

  const refresh = () => {
    clear(account);
    if (signedIn()) {
      const out = el("button", { type: "button" }, "Sign out");
      out.addEventListener("click", () => {
        endSession();
        resetInbox();
        refresh();
        onChange();
      });
      account.append(` Signed in as ${currentName() ?? "?"} `, out);
    } else {
      const name = el("input", { placeholder: "display name", class: "login-name" });
      const slot = el("span", { class: "banner-slot" });
      const go = el("button", { type: "button" }, "Sign in");
      go.addEventListener("click", async () => {
        try {
          const grant = await api.login(name.value.trim());
          beginSession(grant.token, grant.member.display_name);
          refresh();
          onChange();
        } catch (err) {
          if (err instanceof ApiError && err.code === "not_found") {
            try {
              const grant = await api.register(name.value.trim(), []);
              beginSession(grant.token, grant.member.display_name);
              refresh();
              onChange();
              return;
            } catch (inner) {
              showIn(slot, errorBanner(inner));
              return;
            }
          }
          showIn(slot, errorBanner(err));
        }
      });
      account.append(" ", name, go, slot);
    }
  };
  refresh();
  return nav;
}

async function route(main: Element): Promise<void> {
  const parts = location.hash.replace(/^#\//, "").split("/");
  switch (parts[0]) {
    case "queue": {
      const langs = await api.languages();
      const lang = parts[1] || langs[0]?.code;
      if (!lang) {
        clear(main);
        main.appendChild(el("p", { class: "empty" }, "No languages are configured yet."));
        return;
      }
      await renderQueue(main, lang);
      return;
    }
    case "translate":
      await renderTranslatePage(main, decodeURIComponent(parts[1] ?? ""), parts[2] ?? "");
      return;
    case "binder":
      await renderBinder(main);
      return;
    case "forums":
      await renderForums(main);
      return;
    case "polls":
      await renderPolls(main);
      return;
    default:
      await renderDashboard(main);
  }
}

export function install(root: Element): void {
  restoreSession();
  clear(root);
  const main = el("main", { class: "page" });
  const rerender = () => void route(main);
  root.append(el("h1", {}, "Translation Center"), navBar(rerender), main);
  window.addEventListener("hashchange", rerender);
  rerender();
}
