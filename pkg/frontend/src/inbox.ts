/**
 * Client-side holding area for watch notifications.
 *
 * The server hands each notification out exactly once: reading the binder
 * acknowledges them. So whenever any view fetches the binder, the delivered
 * notifications land here and stay until the member actually looks at the
 * binder page. The dashboard badge counts what is pending; opening the
 * binder drains it.
 */

import { api, type Binder, type BinderNotification } from "./api.js";

let pending: BinderNotification[] = [];

/** Fetch the binder, banking any newly delivered notifications. */
export async function refreshInbox(): Promise<Binder> {
  const binder = await api.binder();
  pending = pending.concat(binder.notifications);
  return binder;
}

export function pendingCount(): number {
  return pending.length;
}

/** Hand over everything pending and mark it seen. */
export function takeAll(): BinderNotification[] {
  const seen = pending;
  pending = [];
  return seen;
}

/** Forget buffered notifications (sign-out). */
export function resetInbox(): void {
  pending = [];
}
