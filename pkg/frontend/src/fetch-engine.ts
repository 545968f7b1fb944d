/**
 * No-execution engine: fetches the document and its statically declared
 * subresources the way a browser with scripting disabled would, without
 * ever running scripts. Under the plain profile script files are fetched
 * (and logged) but still not executed; under the nojs profile they are
 * not requested at all, so nojs logs can never contain script entries.
 *
 * Useful where no browser binary exists (CI, sandboxes) and as the
 * reference for the corpus file formats. Pages whose DOM is built by
 * scripts will yield identical plain/nojs documents here; use the
 * puppeteer engine to capture script-evolved DOMs.
 */

import type { BrowserEngine, EngineOptions } from "./engine.js";
import {
  type CrawlJob,
  type RequestRecord,
  type ResourceType,
  type Variant,
  type VisitResult,
  VisitError,
} from "./types.js";

const SRC_RE = /<(img|script|source|link)\b([^>]*)>/gi;
const ATTR_RE = /([a-zA-Z-]+)\s*=\s*("[^"]*"|'[^']*'|[^\s>]+)/g;

interface SubResource {
  url: string;
  type: ResourceType;
}

function attrsOf(raw: string): Record<string, string> {
  const out: Record<string, string> = {};
  for (const match of raw.matchAll(ATTR_RE)) {
    const name = match[1]!.toLowerCase();
    let value = match[2]!;
    if (value.startsWith('"') || value.startsWith("'")) {
      value = value.slice(1, -1);
    }
    if (!(name in out)) {
      out[name] = value;
    }
  }
  return out;
}

function firstSrcsetUrl(srcset: string): string | undefined {
  const first = srcset.split(",")[0];
  return first?.trim().split(/\s+/)[0];
}

function fetchable(url: string | undefined, base: string): string | undefined {
  if (!url) return undefined;
  const trimmed = url.trim();
  if (!trimmed || /^(data|javascript|mailto|about|blob):/i.test(trimmed)) {
    return undefined;
  }
  try {
    const resolved = new URL(trimmed, base);
    if (resolved.protocol !== "http:" && resolved.protocol !== "https:") {
      return undefined;
    }
    return resolved.href;
  } catch {
    return undefined;
  }
}

/** Statically declared subresources of a document, in source order. */
export function discoverSubresources(html: string, baseUrl: string): SubResource[] {
  const found: SubResource[] = [];
  const seen = new Set<string>();
  const push = (url: string | undefined, type: ResourceType) => {
    const resolved = fetchable(url, baseUrl);
    if (resolved && !seen.has(resolved + "|" + type)) {
      seen.add(resolved + "|" + type);
      found.push({ url: resolved, type });
    }
  };
  for (const match of html.matchAll(SRC_RE)) {
    const tag = match[1]!.toLowerCase();
    const attrs = attrsOf(match[2]!);
    if (tag === "img") {
      push(attrs["src"], "image");
      if (attrs["srcset"]) push(firstSrcsetUrl(attrs["srcset"]), "image");
    } else if (tag === "source") {
      if (attrs["srcset"]) push(firstSrcsetUrl(attrs["srcset"]), "image");
    } else if (tag === "script") {
      push(attrs["src"], "script");
    } else if (tag === "link") {
      const rel = (attrs["rel"] ?? "").toLowerCase().split(/\s+/);
      if (rel.includes("stylesheet")) {
        push(attrs["href"], "stylesheet");
      }
    }
  }
  return found;
}

export class FetchEngine implements BrowserEngine {
  readonly name = "fetch";

  async visit(
    job: CrawlJob,
    variant: Variant,
    _options?: EngineOptions,
  ): Promise<VisitResult> {
    const requests: RequestRecord[] = [];
    const started = Date.now();
    const log = (url: string, type: ResourceType) => {
      requests.push({
        url,
        page_url: job.url,
        resource_type: type,
        timestamp_ms: Date.now(),
      });
    };

    let html: string;
    try {
      log(job.url, "other");
      const response = await fetch(job.url, {
        redirect: "follow",
        signal: AbortSignal.timeout(job.timeouts.contentLoadedMs),
      });
      if (!response.ok) {
        throw new VisitError(
          `HTTP ${response.status} for ${job.url}`,
          "http_error",
        );
      }
      html = await response.text();
    } catch (error) {
      if (error instanceof VisitError) throw error;
      const reason =
        (error as Error).name === "TimeoutError"
          ? "content_loaded_timeout"
          : "nav_error";
      throw new VisitError(String(error), reason);
    }

    const deadline = started + job.timeouts.loadMs;
    for (const sub of discoverSubresources(html, job.url)) {
      if (variant === "nojs" && sub.type === "script") {
        continue; // scripts are globally disabled: never even fetched
      }
      if (Date.now() > deadline) {
        throw new VisitError(`load budget exhausted for ${job.url}`, "load_timeout");
      }
      log(sub.url, sub.type);
      try {
        const response = await fetch(sub.url, {
          signal: AbortSignal.timeout(Math.max(1, deadline - Date.now())),
        });
        await response.arrayBuffer(); // drain, mirroring a browser download
      } catch {
        // A failed subresource is a logged request that got no body;
        // browsers carry on, so do we.
      }
    }

    return { html, requests, loadMs: Date.now() - started };
  }

  async close(): Promise<void> {
    // nothing to release
  }
}
