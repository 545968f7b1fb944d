/** Shared types and the corpus file schemas the analyzer consumes. */

export interface Timeouts {
  /** Budget for the DOMContentLoaded event. */
  contentLoadedMs: number;
  /** Budget for the load event (or the whole fetch). */
  loadMs: number;
  /** Extra wait after load so async content settles. */
  settleMs: number;
}

export const DEFAULT_TIMEOUTS: Timeouts = {
  contentLoadedMs: 10_000,
  loadMs: 30_000,
  settleMs: 3_000,
};

export interface CrawlJob {
  url: string;
  pageId: string;
  timeouts: Timeouts;
}

export type Variant = "plain" | "nojs";

export type ResourceType =
  | "image"
  | "stylesheet"
  | "font"
  | "script"
  | "xhr"
  | "other";

/** One line of a *.requests.jsonl file. */
export interface RequestRecord {
  url: string;
  page_url: string;
  resource_type: ResourceType;
  timestamp_ms: number;
}

/** meta.json, one per page directory. */
export interface PageMeta {
  url: string;
  fetched_at: string;
  load_ms_plain: number | null;
  load_ms_nojs: number | null;
  skipped: Partial<Record<Variant, string>>;
  categories?: string[];
}

/** What one engine visit produced. */
export interface VisitResult {
  html: string;
  requests: RequestRecord[];
  loadMs: number;
  screenshot?: Buffer;
}

export class VisitError extends Error {
  constructor(
    message: string,
    /** Short machine-readable skip reason recorded in meta.json. */
    public readonly reason: string,
  ) {
    super(message);
  }
}

/** Map engine-reported resource kinds onto the log vocabulary. */
export function toResourceType(kind: string): ResourceType {
  switch (kind) {
    case "image":
    case "imageset":
      return "image";
    case "stylesheet":
      return "stylesheet";
    case "font":
      return "font";
    case "script":
      return "script";
    case "xhr":
    case "fetch":
      return "xhr";
    default:
      return "other";
  }
}
