/** Session token and display name for the signed-in member. */

import { configure } from "./api.js";

const TOKEN_KEY = "transcenter.token";
const NAME_KEY = "transcenter.name";

export function restoreSession(): void {
  configure({ token: sessionStorage.getItem(TOKEN_KEY) });
}

export function beginSession(token: string, displayName: string): void {
  sessionStorage.setItem(TOKEN_KEY, token);
  sessionStorage.setItem(NAME_KEY, displayName);
  configure({ token });
}

export function endSession(): void {
  sessionStorage.removeItem(TOKEN_KEY);
  sessionStorage.removeItem(NAME_KEY);
  configure({ token: null });
}

export function currentName(): string | null {
  return sessionStorage.getItem(NAME_KEY);
}

export function signedIn(): boolean {
  return sessionStorage.getItem(TOKEN_KEY) !== null;
}
