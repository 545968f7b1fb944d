/**
 * Crawl orchestration: for each URL, visit both profiles concurrently and
 * write one corpus page directory. Writes are atomic per page (staged in
 * a temp directory, then renamed), so an interrupted crawl never leaves a
 * half-written page for the analyzer to trip on.
 */

import { mkdir, rename, rm, writeFile } from "node:fs/promises";
import { createHash } from "node:crypto";
import path from "node:path";

import type { BrowserEngine, EngineOptions } from "./engine.js";
import {
  DEFAULT_TIMEOUTS,
  type CrawlJob,
  type PageMeta,
  type Timeouts,
  type Variant,
  type VisitResult,
  VisitError,
} from "./types.js";

export interface CrawlOptions {
  timeouts?: Timeouts;
  screenshots?: boolean;
  /** Page-level parallelism; both variants of one page always run together. */
  jobs?: number;
  onPage?: (pageId: string, meta: PageMeta) => void;
}

export interface CrawlSummary {
  crawled: number;
  complete: number;
  partial: number;
}

/** Stable, filesystem-safe page id: slug of the URL plus a short hash. */
export function pageIdFor(url: string, index: number): string {
  const hash = createHash("sha1").update(url).digest("hex").slice(0, 8);
  const slug = url
    .replace(/^[a-z]+:\/\//i, "")
    .replace(/[^a-zA-Z0-9]+/g, "-")
    .replace(/^-+|-+$/g, "")
    .slice(0, 40)
    .toLowerCase();
  return `${String(index).padStart(4, "0")}-${slug || "page"}-${hash}`;
}

function requestsJsonl(result: VisitResult): string {
  return result.requests.map((record) => JSON.stringify(record)).join("\n") + "\n";
}

export async function crawlPair(
  job: CrawlJob,
  outDir: string,
  engine: BrowserEngine,
  options: EngineOptions = {},
): Promise<PageMeta> {
  const staging = path.join(outDir, `.tmp-${job.pageId}`);
  const final = path.join(outDir, job.pageId);
  await rm(staging, { recursive: true, force: true });
  await mkdir(staging, { recursive: true });

  const meta: PageMeta = {
    url: job.url,
    fetched_at: new Date().toISOString(),
    load_ms_plain: null,
    load_ms_nojs: null,
    skipped: {},
  };

  const variants: Variant[] = ["plain", "nojs"];
  const outcomes = await Promise.allSettled(
    variants.map((variant) => engine.visit(job, variant, options)),
  );

  for (let i = 0; i < variants.length; i++) {
    const variant = variants[i]!;
    const outcome = outcomes[i]!;
    if (outcome.status === "rejected") {
      const error = outcome.reason;
      meta.skipped[variant] =
        error instanceof VisitError ? error.reason : "nav_error";
      continue;
    }
    const result = outcome.value;
    if (variant === "plain") meta.load_ms_plain = result.loadMs;
    else meta.load_ms_nojs = result.loadMs;
    await writeFile(path.join(staging, `${variant}.html`), result.html, "utf-8");
    await writeFile(
      path.join(staging, `${variant}.requests.jsonl`),
      requestsJsonl(result),
      "utf-8",
    );
    if (result.screenshot) {
      await writeFile(path.join(staging, `${variant}.png`), result.screenshot);
    }
  }

  await writeFile(
    path.join(staging, "meta.json"),
    JSON.stringify(meta, null, 1) + "\n",
    "utf-8",
  );
  await rm(final, { recursive: true, force: true });
  await rename(staging, final);
  return meta;
}

export async function crawlList(
  urls: string[],
  outDir: string,
  engine: BrowserEngine,
  options: CrawlOptions = {},
): Promise<CrawlSummary> {
  await mkdir(outDir, { recursive: true });
  const timeouts = options.timeouts ?? DEFAULT_TIMEOUTS;
  const jobs: CrawlJob[] = urls.map((url, index) => ({
    url,
    pageId: pageIdFor(url, index + 1),
    timeouts,
  }));

  const summary: CrawlSummary = { crawled: 0, complete: 0, partial: 0 };
  const parallelism = Math.max(1, options.jobs ?? 1);
  let next = 0;

  async function worker(): Promise<void> {
    while (next < jobs.length) {
      const job = jobs[next++]!;
      const meta = await crawlPair(job, outDir, engine, {
        screenshots: options.screenshots,
      });
      summary.crawled += 1;
      if (Object.keys(meta.skipped).length === 0) summary.complete += 1;
      else summary.partial += 1;
      options.onPage?.(job.pageId, meta);
    }
  }

  await Promise.all(
    Array.from({ length: Math.min(parallelism, jobs.length) }, () => worker()),
  );
  return summary;
}
