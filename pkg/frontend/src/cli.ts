#!/usr/bin/env node
/**
 * Figure renderer for shearcascade run reports.
 *
 * Usage:
 *   node dist/cli.js --input report.csv --kind flux-curve --output flux.svg [--delta 0.5]
 *
 * Kinds: flux-curve | shell-energy | admissible-region
 * Exit codes: 0 success, 1 rendering failure, 2 bad arguments or schema mismatch.
 */

import { SchemaVersionError } from "./csv.js";
import { FigureKind, FigureSpec, render } from "./figures.js";

const KINDS: FigureKind[] = ["flux-curve", "shell-energy", "admissible-region"];

function parseArgs(argv: string[]): FigureSpec {
  const values = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    if (!key.startsWith("--") || i + 1 >= argv.length) {
      throw new UsageError(`malformed arguments near '${key}'`);
    }
    values.set(key.slice(2), argv[i + 1]);
  }
  const input = values.get("input");
  const kind = values.get("kind") as FigureKind | undefined;
  const output = values.get("output");
  if (!input || !kind || !output) {
    throw new UsageError("required flags: --input <report.csv> --kind <kind> --output <figure.svg>");
  }
  if (!KINDS.includes(kind)) {
    throw new UsageError(`unknown kind '${kind}'; expected one of ${KINDS.join(", ")}`);
  }
  const known = new Set(["input", "kind", "output", "delta"]);
  for (const key of values.keys()) {
    if (!known.has(key)) throw new UsageError(`unknown flag '--${key}'`);
  }
  const spec: FigureSpec = { input, kind, output };
  const delta = values.get("delta");
  if (delta !== undefined) {
    spec.delta = Number(delta);
    if (!(spec.delta > 0)) throw new UsageError(`--delta must be positive, got '${delta}'`);
  }
  return spec;
}

class UsageError extends Error {}

export async function main(argv: string[]): Promise<number> {
  let spec: FigureSpec;
  try {
    spec = parseArgs(argv);
  } catch (err) {
    console.error((err as Error).message);
    return 2;
  }
  try {
    const path = await render(spec);
    console.log(`wrote ${path}`);
    return 0;
  } catch (err) {
    if (err instanceof SchemaVersionError) {
      console.error(`schema error: ${err.message}`);
      return 2;
    }
    console.error(`render failed: ${(err as Error).message}`);
    return 1;
  }
}

const invokedDirectly = process.argv[1] && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  main(process.argv.slice(2)).then((code) => {
    process.exitCode = code;
  });
}
