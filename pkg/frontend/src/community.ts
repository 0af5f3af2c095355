/** Compact read views over the community endpoints: forums and polls. */

import { api } from "./api.js";
import { errorBanner, showIn } from "./banner.js";
import { signedIn } from "./session.js";
import { clear, el } from "./text.js";

export async function renderForums(root: Element): Promise<void> {
  clear(root);
  const slot = el("div", { class: "banner-slot" });
  const list = el("ul", { class: "threads" });
  root.append(el("h2", {}, "Forums"), slot, list);
  try {
    const threads = await api.forums();
    for (const thread of threads) {
      const where = thread.lang ? `${thread.kind}/${thread.lang}` : thread.kind;
      list.appendChild(
        el(
          "li",
          {},
          el("strong", {}, thread.title),
          ` — ${where}, ${thread.post_count} post${thread.post_count === 1 ? "" : "s"}`
        )
      );
    }
    if (threads.length === 0) list.appendChild(el("li", { class: "empty" }, "No threads yet."));
  } catch (err) {
    showIn(slot, errorBanner(err, () => void renderForums(root)));
  }
}

export async function renderPolls(root: Element): Promise<void> {
  clear(root);
  const slot = el("div", { class: "banner-slot" });
  const list = el("div", { class: "polls" });
  root.append(el("h2", {}, "Polls"), slot, list);
  try {
    const polls = await api.polls();
    for (const poll of polls) {
      const card = el("div", { class: "poll", "data-poll-id": poll.poll_id });
      card.appendChild(el("h3", {}, poll.question));
      const options = el("ul", {});
      poll.options.forEach((optionText, index) => {
        // tallies are server numbers, shown as-is
        const line = el("li", {}, `${optionText}: ${poll.tally[index]}`);
        if (!poll.closed && signedIn()) {
          const voteButton = el("button", { type: "button" }, "Vote");
          voteButton.addEventListener("click", async () => {
            try {
              await api.vote(poll.poll_id, index);
              await renderPolls(root);
            } catch (err) {
              showIn(slot, errorBanner(err));
            }
          });
          line.append(" ", voteButton);
        }
        options.appendChild(line);
      });
      card.appendChild(options);
      card.appendChild(
        el(
          "p",
          { class: "poll-status" },
          poll.closed ? "Closed. " : "Open. ",
          `${poll.voter_count} voter${poll.voter_count === 1 ? "" : "s"}.`
        )
      );
      list.appendChild(card);
    }
    if (polls.length === 0) list.appendChild(el("p", { class: "empty" }, "No polls yet."));
  } catch (err) {
    showIn(slot, errorBanner(err, () => void renderPolls(root)));
  }
}
