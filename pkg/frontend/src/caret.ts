/** Insert text into a textarea at the caret, replacing any selection. */

export function insertAtCaret(area: HTMLTextAreaElement, text: string): void {
  const start = area.selectionStart ?? area.value.length;
  const end = area.selectionEnd ?? start;
  const scrollTop = area.scrollTop;
  if (typeof area.setRangeText === "function") {
    area.setRangeText(text, start, end);
  } else {
    // older engines: splice the value by hand
    area.value = area.value.slice(0, start) + text + area.value.slice(end);
  }
  // land the caret right after the insertion, whichever path ran
  area.setSelectionRange(start + text.length, start + text.length);
  area.scrollTop = scrollTop;
  area.focus();
  area.dispatchEvent(new Event("input", { bubbles: true }));
}
