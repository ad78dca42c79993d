/**
 * The two vector file formats consumed by the benchmark harness.
 *
 * Word vectors: first line "<count> <dim>", then one line per token: the
 * lowercase token followed by dim reals, single-space separated.
 * Sentence vectors: one line per tweet: "<tweet-id>\t<reals space separated>".
 * Both are UTF-8 with LF line endings and "." decimals.
 */

import { mkdtempSync, renameSync, rmSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { dirname, join } from "node:path";

import { DataError } from "./models.js";

export interface WordVectorTable {
  dim: number;
  entries: Map<string, Float64Array>;
}

export function parseWordVectorText(text: string, source = "<text>"): WordVectorTable {
  const lines = text.split("\n");
  const header = (lines[0] ?? "").trim().split(/\s+/);
  if (header.length !== 2) {
    throw new DataError(`${source}: line 1: header must be '<count> <dim>'`);
  }
  const count = Number(header[0]);
  const dim = Number(header[1]);
  if (!Number.isInteger(count) || !Number.isInteger(dim) || count < 0 || dim < 1) {
    throw new DataError(`${source}: line 1: header counts out of range`);
  }
  const entries = new Map<string, Float64Array>();
  for (let i = 1; i < lines.length; i++) {
    const line = lines[i];
    if (!line) continue;
    const fields = line.split(" ");
    const token = fields[0];
    if (!token) throw new DataError(`${source}: line ${i + 1}: empty token`);
    if (entries.has(token)) {
      throw new DataError(`${source}: line ${i + 1}: duplicate token '${token}'`);
    }
    if (fields.length - 1 !== dim) {
      throw new DataError(
        `${source}: line ${i + 1}: expected ${dim} values, got ${fields.length - 1}`,
      );
    }
    const vec = new Float64Array(dim);
    for (let j = 0; j < dim; j++) {
      const v = Number(fields[j + 1]);
      if (!Number.isFinite(v)) {
        throw new DataError(`${source}: line ${i + 1}: non-finite value`);
      }
      vec[j] = v;
    }
    entries.set(token, vec);
  }
  if (entries.size !== count) {
    throw new DataError(`${source}: header says ${count} rows, file has ${entries.size}`);
  }
  return { dim, entries };
}

export function formatWordVectorFile(dim: number, rows: Iterable<[string, Float64Array]>): string {
  const body: string[] = [];
  for (const [token, vec] of rows) {
    body.push(`${token} ${Array.from(vec, (v) => String(v)).join(" ")}`);
  }
  return `${body.length} ${dim}\n` + body.map((l) => l + "\n").join("");
}

export function formatSentenceVectorFile(rows: Iterable<[string, Float64Array]>): string {
  const out: string[] = [];
  for (const [id, vec] of rows) {
    out.push(`${id}\t${Array.from(vec, (v) => String(v)).join(" ")}\n`);
  }
  return out.join("");
}

/** Write via a temp file and rename, so readers never see a partial file. */
export function writeAtomic(path: string, content: string): void {
  const dir = mkdtempSync(join(tmpdir(), "embedgen-"));
  const tmp = join(dir, "out");
  try {
    writeFileSync(tmp, content, { encoding: "utf-8" });
    try {
      renameSync(tmp, path);
    } catch (err: unknown) {
      // cross-device rename: fall back to write-in-place next to the target
      if ((err as NodeJS.ErrnoException).code !== "EXDEV") throw err;
      const sibling = join(dirname(path), `.${Date.now()}.embedgen.tmp`);
      writeFileSync(sibling, content, { encoding: "utf-8" });
      renameSync(sibling, path);
    }
  } finally {
    rmSync(dir, { recursive: true, force: true });
  }
}
