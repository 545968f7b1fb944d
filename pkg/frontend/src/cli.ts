/**
 * nojs-crawl: crawl a URL list into the analyzable corpus layout.
 *
 *   nojs-crawl --urls urls.txt --out corpus/ [--jobs N] [--screenshots]
 *              [--engine fetch|puppeteer] [--executable /path/to/browser]
 *              [--product chrome|firefox]
 *
 * URL file: newline-delimited, `#` comments. The puppeteer engine needs
 * a browser executable (flag or PUPPETEER_EXECUTABLE_PATH); the fetch
 * engine needs nothing and never executes scripts.
 */

import { readFile } from "node:fs/promises";
import process from "node:process";

import { crawlList } from "./crawl.js";
import type { BrowserEngine } from "./engine.js";
import { FetchEngine } from "./fetch-engine.js";
import { PuppeteerEngine } from "./puppeteer-engine.js";

interface CliArgs {
  urls?: string;
  out?: string;
  jobs: number;
  screenshots: boolean;
  engine: "fetch" | "puppeteer";
  executable?: string;
  product: "chrome" | "firefox";
}

function parseArgs(argv: string[]): CliArgs {
  const args: CliArgs = {
    jobs: 1,
    screenshots: false,
    engine: process.env.PUPPETEER_EXECUTABLE_PATH ? "puppeteer" : "fetch",
    executable: process.env.PUPPETEER_EXECUTABLE_PATH,
    product: "chrome",
  };
  for (let i = 0; i < argv.length; i++) {
    const flag = argv[i]!;
    const next = () => {
      const value = argv[++i];
      if (value === undefined) throw new UsageError(`${flag} needs a value`);
      return value;
    };
    switch (flag) {
      case "--urls": args.urls = next(); break;
      case "--out": args.out = next(); break;
      case "--jobs": args.jobs = Number.parseInt(next(), 10); break;
      case "--screenshots": args.screenshots = true; break;
      case "--engine": {
        const value = next();
        if (value !== "fetch" && value !== "puppeteer") {
          throw new UsageError(`unknown engine ${value}`);
        }
        args.engine = value;
        break;
      }
      case "--executable": args.executable = next(); break;
      case "--product": {
        const value = next();
        if (value !== "chrome" && value !== "firefox") {
          throw new UsageError(`unknown product ${value}`);
        }
        args.product = value;
        break;
      }
      case "--help":
      case "-h":
        console.log(MODULE_DOC);
        process.exit(0);
        break;
      default:
        throw new UsageError(`unknown flag ${flag}`);
    }
  }
  if (!args.urls || !args.out) {
    throw new UsageError("--urls and --out are required");
  }
  if (!Number.isFinite(args.jobs) || args.jobs < 1) {
    throw new UsageError("--jobs must be a positive integer");
  }
  return args;
}

class UsageError extends Error {}

const MODULE_DOC = `nojs-crawl --urls FILE --out DIR [--jobs N] [--screenshots]
           [--engine fetch|puppeteer] [--executable PATH] [--product chrome|firefox]`;

export async function main(argv = process.argv.slice(2)): Promise<number> {
  let args: CliArgs;
  try {
    args = parseArgs(argv);
  } catch (error) {
    if (error instanceof UsageError) {
      console.error(`nojs-crawl: ${error.message}`);
      console.error(MODULE_DOC);
      return 1;
    }
    throw error;
  }

  const urlText = await readFile(args.urls!, "utf-8").catch((error) => {
    console.error(`nojs-crawl: cannot read ${args.urls}: ${error}`);
    return null;
  });
  if (urlText === null) return 2;
  const urls = urlText
    .split("\n")
    .map((line) => line.trim())
    .filter((line) => line && !line.startsWith("#"));
  if (urls.length === 0) {
    console.error("nojs-crawl: URL list is empty");
    return 2;
  }

  let engine: BrowserEngine;
  if (args.engine === "puppeteer") {
    if (!args.executable) {
      console.error(
        "nojs-crawl: --engine puppeteer needs --executable or PUPPETEER_EXECUTABLE_PATH",
      );
      return 1;
    }
    engine = new PuppeteerEngine({
      executablePath: args.executable,
      product: args.product,
    });
  } else {
    engine = new FetchEngine();
  }

  try {
    const summary = await crawlList(urls, args.out!, engine, {
      jobs: args.jobs,
      screenshots: args.screenshots,
      onPage: (pageId, meta) => {
        const state =
          Object.keys(meta.skipped).length === 0
            ? "ok"
            : `skipped:${JSON.stringify(meta.skipped)}`;
        console.error(`${pageId} ${state}`);
      },
    });
    console.log(JSON.stringify(summary));
    return 0;
  } finally {
    await engine.close();
  }
}

if (process.argv[1] && /cli\.(ts|js)$/.test(process.argv[1])) {
  main().then((code) => {
    process.exitCode = code;
  });
}
