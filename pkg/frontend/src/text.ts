/**
 * DOM construction helpers.
 *
 * Everything user-authored or server-supplied enters the page through `el`
 * (or `textNode` directly), which only ever creates text nodes. No code in
 * this client assigns user content to innerHTML.
 */

type Child = Node | string;

export function textNode(value: string): Text {
  return document.createTextNode(value);
}

export function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  attrs: Record<string, string> = {},
  ...children: Child[]
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  for (const [key, value] of Object.entries(attrs)) {
    if (key === "class") node.className = value;
    else node.setAttribute(key, value);
  }
  for (const child of children) {
    node.appendChild(typeof child === "string" ? textNode(child) : child);
  }
  return node;
}

export function clear(node: Element): void {
  while (node.firstChild) node.removeChild(node.firstChild);
}

const OPEN = "[[";
const CLOSE = "]]";

/**
 * Render a server snippet like "before [[target]] after" as text nodes with
 * a <mark> wrapping exactly the bracketed span. The brackets themselves are
 * markers and do not appear in the output. Text without markers comes back
 * as a single text node.
 */
export function renderHighlighted(snippet: string): DocumentFragment {
  const fragment = document.createDocumentFragment();
  const start = snippet.indexOf(OPEN);
  const end = snippet.lastIndexOf(CLOSE);
  if (start === -1 || end === -1 || end < start + OPEN.length) {
    fragment.appendChild(textNode(snippet));
    return fragment;
  }
  const before = snippet.slice(0, start);
  const inner = snippet.slice(start + OPEN.length, end);
  const after = snippet.slice(end + CLOSE.length);
  if (before) fragment.appendChild(textNode(before));
  fragment.appendChild(el("mark", { class: "highlight" }, inner));
  if (after) fragment.appendChild(textNode(after));
  return fragment;
}
