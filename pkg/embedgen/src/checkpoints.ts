/**
 * Local checkpoint loading.
 *
 * Word-level checkpoint: a word-vector text file (same grammar as the
 * exported format). For fastText, a sibling "<path>.subwords.vec" file may
 * supply character-n-gram vectors used to synthesize out-of-vocabulary
 * words (sum of the known n-gram vectors of "<word>", n = 3..6).
 *
 * Sentence-level checkpoint: a JSON file
 * {"kind": "hashed-projection", "dim": 768, "seed": 7, "version": "..."}
 * describing a deterministic stand-in encoder: each token maps to a hashed
 * unit vector and the encoder exposes the per-token states for pooling.
 * Real encoders plug in behind the same interface; the manifest records
 * which one produced a file.
 */

import { createHash } from "node:crypto";
import { existsSync, readFileSync } from "node:fs";

import { parseWordVectorText, type WordVectorTable } from "./formats.js";
import { DataError, type ModelRef } from "./models.js";

export interface WordCheckpoint {
  table: WordVectorTable;
  subwords: WordVectorTable | null;
  version: string; // content digest of the checkpoint file(s)
}

export interface SentenceCheckpoint {
  dim: number;
  seed: number;
  version: string;
  /** Per-token encoder states for one text (already tokenized). */
  encode(tokens: string[]): Float64Array[];
  /** States pooled when a text has no tokens at all. */
  specialTokens: string[];
}

function fileDigest(paths: string[]): string {
  const hash = createHash("sha256");
  for (const p of paths) hash.update(readFileSync(p));
  return `sha256:${hash.digest("hex")}`;
}

export function loadWordCheckpoint(path: string, model: ModelRef): WordCheckpoint {
  if (!existsSync(path)) {
    throw new DataError(`model '${model.id}' unavailable: no checkpoint at ${path}`);
  }
  const table = parseWordVectorText(readFileSync(path, "utf-8"), path);
  if (model.pinnedDim !== undefined && table.dim !== model.pinnedDim) {
    throw new DataError(
      `${model.id} vectors are ${model.pinnedDim}-dimensional, checkpoint has ${table.dim}`,
    );
  }
  const subwordPath = `${path}.subwords.vec`;
  let subwords: WordVectorTable | null = null;
  const digestInputs = [path];
  if (model.id === "fasttext" && existsSync(subwordPath)) {
    subwords = parseWordVectorText(readFileSync(subwordPath, "utf-8"), subwordPath);
    if (subwords.dim !== table.dim) {
      throw new DataError(
        `${subwordPath}: subword dim ${subwords.dim} != word dim ${table.dim}`,
      );
    }
    digestInputs.push(subwordPath);
  }
  return { table, subwords, version: fileDigest(digestInputs) };
}

/** Character n-grams (n = 3..6) of "<word>", fastText style. */
export function characterNgrams(word: string, min = 3, max = 6): string[] {
  const marked = `<${word}>`;
  const grams: string[] = [];
  for (let n = min; n <= max; n++) {
    for (let i = 0; i + n <= marked.length; i++) {
      grams.push(marked.slice(i, i + n));
    }
  }
  return grams;
}

/** Sum of the known n-gram vectors; null when no n-gram is known. */
export function synthesizeSubwordVector(
  word: string,
  subwords: WordVectorTable,
): Float64Array | null {
  const out = new Float64Array(subwords.dim);
  let found = 0;
  for (const gram of characterNgrams(word)) {
    const vec = subwords.entries.get(gram);
    if (!vec) continue;
    for (let j = 0; j < out.length; j++) out[j] += vec[j];
    found++;
  }
  return found > 0 ? out : null;
}

/** Deterministic unit vector for a token, from counter-mode sha256. */
export function hashedTokenVector(token: string, dim: number, seed: number): Float64Array {
  const out = new Float64Array(dim);
  let filled = 0;
  for (let block = 0; filled < dim; block++) {
    const digest = createHash("sha256").update(`${seed}|${token}|${block}`).digest();
    for (let offset = 0; offset + 4 <= digest.length && filled < dim; offset += 4) {
      const u = digest.readUInt32BE(offset);
      out[filled++] = (u / 2 ** 32) * 2 - 1; // uniform in [-1, 1)
    }
  }
  let norm = 0;
  for (const v of out) norm += v * v;
  norm = Math.sqrt(norm);
  for (let j = 0; j < dim; j++) out[j] /= norm;
  return out;
}

export function loadSentenceCheckpoint(path: string, model: ModelRef): SentenceCheckpoint {
  if (!existsSync(path)) {
    throw new DataError(`model '${model.id}' unavailable: no checkpoint at ${path}`);
  }
  let spec: { kind?: string; dim?: number; seed?: number; version?: string };
  try {
    spec = JSON.parse(readFileSync(path, "utf-8"));
  } catch (err) {
    throw new DataError(`${path}: invalid checkpoint JSON: ${String(err)}`);
  }
  if (spec.kind !== "hashed-projection") {
    throw new DataError(`${path}: unsupported sentence checkpoint kind '${spec.kind}'`);
  }
  const dim = spec.dim ?? model.pinnedDim;
  if (!dim || dim < 2) throw new DataError(`${path}: missing or bad dim`);
  if (model.pinnedDim !== undefined && dim !== model.pinnedDim) {
    throw new DataError(
      `${model.id} vectors are ${model.pinnedDim}-dimensional, checkpoint has ${dim}`,
    );
  }
  const seed = spec.seed ?? 0;
  return {
    dim,
    seed,
    version: fileDigest([path]),
    specialTokens: ["<s>", "</s>"],
    encode: (tokens) => tokens.map((t) => hashedTokenVector(t, dim, seed)),
  };
}
