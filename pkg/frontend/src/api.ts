/**
 * Typed client for the center's /api endpoints.
 *
 * Every displayed number (priorities, percentages, totals, tallies) comes
 * from these responses as-is; nothing in the client recomputes them.
 */

export interface ErrorEnvelope {
  code: string;
  message: string;
  detail?: Record<string, unknown>;
}

export class ApiError extends Error {
  readonly status: number;
  readonly code: string;
  readonly detail?: Record<string, unknown>;

  constructor(status: number, envelope: ErrorEnvelope) {
    super(envelope.message);
    this.status = status;
    this.code = envelope.code;
    this.detail = envelope.detail;
  }
}

export interface Language {
  code: string;
  name: string;
  palette: string[];
}

export interface Progress {
  lang: string;
  translated_count: number;
  total_count: number;
  percent: number;
  display: string;
}

export interface QueueItem {
  id: string;
  source_text: string;
  source_lang: string;
  page_id: string;
  category: string;
  context_before: string;
  context_after: string;
  view_count: number;
  created_at: string;
  status: string;
  priority: number;
}

export interface ItemDetail extends Omit<QueueItem, "status" | "priority"> {
  page: { page_id: string; url_or_path: string; title: string; segment_ids: string[] } | null;
}

export interface ItemContext {
  item_id: string;
  lang: string;
  snippet: string;
  page_preview: string;
}

export interface Translation {
  translation_id: string;
  item_id: string;
  lang: string;
  version: number;
  text: string;
  author_id: string;
  status: string;
  created_at: string;
}

export interface TranslationSlot {
  item_id: string;
  lang: string;
  current: Translation | null;
  history: Translation[];
}

export interface ItemComment {
  comment_id: string;
  item_id: string;
  lang: string;
  author_id: string;
  body: string;
  created_at: string;
  parent_id: string | null;
}

export interface BinderNotification {
  item_id: string;
  lang: string;
  text: string;
  version: number;
}

export interface Binder {
  member_id: string;
  translated_items: { item_id: string; lang: string; version: number }[];
  notifications: BinderNotification[];
  watches: { item_id: string; lang: string; notified: boolean }[];
}

export interface Quality {
  item_id: string;
  lang: string;
  quality: number;
  review_count: number;
}

export interface Member {
  member_id: string;
  display_name: string;
  langs: string[];
  joined_at: string;
  contact_opt_in: boolean;
  contact_info: string;
  is_system: boolean;
}

export interface SessionGrant {
  member: Member;
  token: string;
  expires_at: string;
}

export interface ForumThreadSummary {
  thread_id: string;
  kind: string;
  lang: string | null;
  title: string;
  created_at: string;
  post_count: number;
}

export interface PollView {
  poll_id: string;
  question: string;
  options: string[];
  scope: string;
  created_at: string;
  closed: boolean;
  tally: number[];
  voter_count: number;
}

export type Rubric = Record<string, number>;

let baseUrl = "";
let token: string | null = null;

/** Point the client somewhere else (tests, reverse-proxied deployments). */
export function configure(options: { baseUrl?: string; token?: string | null }): void {
  if (options.baseUrl !== undefined) baseUrl = options.baseUrl.replace(/\/$/, "");
  if (options.token !== undefined) token = options.token;
}

export function sessionToken(): string | null {
  return token;
}

async function call<T>(method: string, path: string, body?: unknown): Promise<T> {
  const headers: Record<string, string> = {};
  if (body !== undefined) headers["Content-Type"] = "application/json";
  if (token) headers["Authorization"] = `Bearer ${token}`;
  let response: Response;
  try {
    response = await fetch(baseUrl + path, {
      method,
      headers,
      body: body === undefined ? undefined : JSON.stringify(body),
    });
  } catch (err) {
    throw new ApiError(0, { code: "unreachable", message: `cannot reach the server: ${err}` });
  }
  if (!response.ok) {
    let envelope: ErrorEnvelope;
    try {
      envelope = (await response.json()).error;
    } catch {
      envelope = { code: "error", message: `request failed with status ${response.status}` };
    }
    throw new ApiError(response.status, envelope);
  }
  return (await response.json()) as T;
}

const get = <T>(path: string) => call<T>("GET", path);
const post = <T>(path: string, body: unknown) => call<T>("POST", path, body);

export const api = {
  languages: () => get<Language[]>("/api/languages"),
  progress: (lang: string) => get<Progress>(`/api/progress/${encodeURIComponent(lang)}`),

  items: (lang: string, filter = "all", order = "priority") =>
    get<QueueItem[]>(
      `/api/items?lang=${encodeURIComponent(lang)}&filter=${filter}&order=${order}`
    ),
  item: (itemId: string) => get<ItemDetail>(`/api/items/${encodeURIComponent(itemId)}`),
  context: (itemId: string, lang: string) =>
    get<ItemContext>(
      `/api/items/${encodeURIComponent(itemId)}/context?lang=${encodeURIComponent(lang)}`
    ),
  recordView: (itemId: string) =>
    post<{ item_id: string; view_count: number }>(
      `/api/items/${encodeURIComponent(itemId)}/view`,
      {}
    ),
  randomItem: (lang: string) =>
    get<{ lang: string; item_id: string }>(`/api/random?lang=${encodeURIComponent(lang)}`),

  translations: (itemId: string, lang: string) =>
    get<TranslationSlot>(
      `/api/items/${encodeURIComponent(itemId)}/translations?lang=${encodeURIComponent(lang)}`
    ),
  submitTranslation: (itemId: string, lang: string, text: string, baseVersion: number | null) =>
    post<Translation>(`/api/items/${encodeURIComponent(itemId)}/translations`, {
      lang,
      text,
      base_version: baseVersion,
    }),

  comments: (itemId: string, lang: string) =>
    get<ItemComment[]>(
      `/api/items/${encodeURIComponent(itemId)}/comments?lang=${encodeURIComponent(lang)}`
    ),
  addComment: (itemId: string, lang: string, body: string, parentId: string | null = null) =>
    post<ItemComment>(`/api/items/${encodeURIComponent(itemId)}/comments`, {
      lang,
      body,
      parent_id: parentId,
    }),

  requestItem: (itemId: string, lang: string) =>
    post<{ lang: string; counts: Record<string, number> }>("/api/requests", {
      lang,
      item_id: itemId,
    }),
  requestPage: (pageId: string, lang: string) =>
    post<{ lang: string; counts: Record<string, number> }>("/api/requests", {
      lang,
      page_id: pageId,
    }),
  binder: () => get<Binder>("/api/binder"),

  submitReview: (translationId: string, rubric: Rubric, body: string) =>
    post<{ total: number }>(`/api/translations/${encodeURIComponent(translationId)}/reviews`, {
      rubric,
      body,
    }),
  quality: (itemId: string, lang: string) =>
    get<Quality>(
      `/api/quality/${encodeURIComponent(itemId)}/${encodeURIComponent(lang)}`
    ),

  register: (displayName: string, langs: string[]) =>
    post<SessionGrant>("/api/members", { display_name: displayName, langs }),
  login: (displayName: string) => post<SessionGrant>("/api/sessions", { display_name: displayName }),

  forums: (kind?: string, lang?: string) => {
    const params = new URLSearchParams();
    if (kind) params.set("kind", kind);
    if (lang) params.set("lang", lang);
    const suffix = params.toString() ? `?${params}` : "";
    return get<ForumThreadSummary[]>(`/api/forums${suffix}`);
  },
  polls: () => get<PollView[]>("/api/polls"),
  vote: (pollId: string, optionIndex: number) =>
    post<PollView>(`/api/polls/${encodeURIComponent(pollId)}/votes`, {
      option_index: optionIndex,
    }),
};
