/**
 * Real-browser engine on puppeteer-core: two separately launched browser
 * profiles, one default and one with scripting globally disabled.
 *
 * With Firefox the nojs profile sets the browser-wide pref
 * `javascript.enabled=false`; with Chromium-family browsers scripting is
 * disabled per page before navigation, which is the closest available
 * equivalent. Requests are logged from the network layer, so the log
 * reflects what the browser actually asked for.
 */

import type { Browser, HTTPRequest, Page } from "puppeteer-core";

import type { BrowserEngine, EngineOptions } from "./engine.js";
import {
  type CrawlJob,
  type RequestRecord,
  type Variant,
  type VisitResult,
  VisitError,
  toResourceType,
} from "./types.js";

export interface PuppeteerEngineConfig {
  executablePath: string;
  /** "chrome" (default) or "firefox". */
  product?: "chrome" | "firefox";
  headless?: boolean;
  viewport?: { width: number; height: number };
}

export class PuppeteerEngine implements BrowserEngine {
  readonly name = "puppeteer";
  private browsers: Partial<Record<Variant, Browser>> = {};

  constructor(private readonly config: PuppeteerEngineConfig) {}

  private async browserFor(variant: Variant): Promise<Browser> {
    const existing = this.browsers[variant];
    if (existing) return existing;
    const { launch } = await import("puppeteer-core");
    const product = this.config.product ?? "chrome";
    const browser = await launch({
      executablePath: this.config.executablePath,
      browser: product,
      headless: this.config.headless ?? true,
      args: product === "chrome" ? ["--no-sandbox", "--disable-gpu"] : [],
      ...(product === "firefox" && variant === "nojs"
        ? { extraPrefsFirefox: { "javascript.enabled": false } }
        : {}),
    });
    this.browsers[variant] = browser;
    return browser;
  }

  async visit(
    job: CrawlJob,
    variant: Variant,
    options?: EngineOptions,
  ): Promise<VisitResult> {
    const browser = await this.browserFor(variant);
    const page: Page = await browser.newPage();
    const requests: RequestRecord[] = [];
    try {
      await page.setViewport(
        this.config.viewport ?? { width: 1366, height: 768 },
      );
      if ((this.config.product ?? "chrome") === "chrome" && variant === "nojs") {
        await page.setJavaScriptEnabled(false);
      }
      page.on("request", (request: HTTPRequest) => {
        requests.push({
          url: request.url(),
          page_url: job.url,
          resource_type: toResourceType(request.resourceType()),
          timestamp_ms: Date.now(),
        });
      });

      const started = Date.now();
      // Register before navigating so a fast load event is never missed.
      const loaded = new Promise<void>((resolve) =>
        page.once("load", () => resolve()),
      );
      try {
        await page.goto(job.url, {
          waitUntil: "domcontentloaded",
          timeout: job.timeouts.contentLoadedMs,
        });
      } catch (error) {
        throw new VisitError(String(error), "content_loaded_timeout");
      }
      const remaining = Math.max(1, job.timeouts.loadMs - (Date.now() - started));
      let timer: NodeJS.Timeout | undefined;
      const outcome = await Promise.race([
        loaded.then(() => "loaded" as const),
        new Promise<"timeout">((resolve) => {
          timer = setTimeout(() => resolve("timeout"), remaining);
        }),
      ]);
      if (timer) clearTimeout(timer);
      if (outcome === "timeout") {
        throw new VisitError(`load not fired for ${job.url}`, "load_timeout");
      }
      const loadMs = Date.now() - started;
      await new Promise((resolve) => setTimeout(resolve, job.timeouts.settleMs));

      const html = await page.content();
      let screenshot: Buffer | undefined;
      if (options?.screenshots) {
        screenshot = Buffer.from(await page.screenshot({ fullPage: true }));
      }
      return { html, requests, loadMs, screenshot };
    } finally {
      await page.close().catch(() => undefined);
    }
  }

  async close(): Promise<void> {
    for (const variant of Object.keys(this.browsers) as Variant[]) {
      await this.browsers[variant]?.close().catch(() => undefined);
      delete this.browsers[variant];
    }
  }
}
