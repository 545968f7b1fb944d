/** Browser engine abstraction: one visit of one URL under one profile. */

import type { CrawlJob, Variant, VisitResult } from "./types.js";

export interface EngineOptions {
  screenshots?: boolean;
}

export interface BrowserEngine {
  /** Human-readable engine name for logs and meta diagnostics. */
  readonly name: string;

  /**
   * Load the page under the given profile and return the serialized DOM,
   * the request log and timing. Must reject with VisitError carrying a
   * skip reason on navigation failure or timeout.
   */
  visit(job: CrawlJob, variant: Variant, options?: EngineOptions): Promise<VisitResult>;

  /** Release browsers/sockets. Safe to call more than once. */
  close(): Promise<void>;
}
