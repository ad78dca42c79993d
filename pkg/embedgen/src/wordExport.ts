/**
 * Word-vector export: filter a checkpoint to a requested vocabulary and
 * write it in the harness format, synthesizing fastText out-of-vocabulary
 * words from character n-grams when the checkpoint ships subword vectors.
 */

import { synthesizeSubwordVector, type WordCheckpoint, loadWordCheckpoint } from "./checkpoints.js";
import { formatWordVectorFile, writeAtomic } from "./formats.js";
import {
  type ExportManifest,
  finalizeManifest,
  hashLines,
  hashText,
  manifestPath,
} from "./manifest.js";
import { DataError, resolveModel } from "./models.js";

export interface WordExportResult {
  manifest: ExportManifest;
  rowCount: number;
  misses: string[];
}

export function generateWordVectors(
  modelId: string,
  vocabulary: string[],
  checkpointPath: string,
  outPath: string,
): WordExportResult {
  const model = resolveModel(modelId);
  if (model.kind !== "word-level") {
    throw new DataError(`model '${modelId}' is not word-level`);
  }
  const checkpoint = loadWordCheckpoint(checkpointPath, model);

  const vocab = Array.from(new Set(vocabulary.map((t) => t.toLowerCase()))).sort();
  const rows: [string, Float64Array][] = [];
  const misses: string[] = [];
  for (const token of vocab) {
    const vec = lookup(token, checkpoint);
    if (vec) rows.push([token, vec]);
    else misses.push(token);
  }
  if (rows.length === 0) {
    throw new DataError("no requested token is covered by the checkpoint");
  }

  const content = formatWordVectorFile(checkpoint.table.dim, rows);
  writeAtomic(outPath, content);

  const manifest = finalizeManifest({
    embedder: model.id,
    model_id: model.id,
    model_version: checkpoint.version,
    kind: "word-level",
    dim: checkpoint.table.dim,
    pooling: null,
    input_sha256: hashLines(vocab),
    output_sha256: hashText(content),
    row_count: rows.length,
    misses,
    empty_tweets: [],
  });
  writeAtomic(manifestPath(outPath), JSON.stringify(manifest, null, 2) + "\n");
  return { manifest, rowCount: rows.length, misses };
}

function lookup(token: string, checkpoint: WordCheckpoint): Float64Array | null {
  const direct = checkpoint.table.entries.get(token);
  if (direct) return direct;
  if (checkpoint.subwords) {
    return synthesizeSubwordVector(token, checkpoint.subwords);
  }
  return null;
}
