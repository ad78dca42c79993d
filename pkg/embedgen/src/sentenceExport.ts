/**
 * Sentence-vector export: one pooled vector per tweet id, written in the
 * harness format. Pooling is "mean" (average of the encoder's token
 * states) or "first" (the first state). A tweet with no tokens left after
 * tokenization is pooled from the encoder's special tokens and flagged in
 * the manifest.
 */

import { loadSentenceCheckpoint, type SentenceCheckpoint } from "./checkpoints.js";
import { formatSentenceVectorFile, writeAtomic } from "./formats.js";
import {
  type ExportManifest,
  finalizeManifest,
  hashLines,
  hashText,
  manifestPath,
} from "./manifest.js";
import { simpleTokenize, type TweetText } from "./inputs.js";
import { DataError, resolveModel } from "./models.js";

export type Pooling = "mean" | "first";

export interface SentenceExportResult {
  manifest: ExportManifest;
  rowCount: number;
  emptyTweets: string[];
}

function pool(states: Float64Array[], pooling: Pooling, dim: number): Float64Array {
  if (pooling === "first") return states[0];
  const out = new Float64Array(dim);
  for (const state of states) {
    for (let j = 0; j < dim; j++) out[j] += state[j];
  }
  for (let j = 0; j < dim; j++) out[j] /= states.length;
  return out;
}

export function generateSentenceVectors(
  modelId: string,
  tweets: TweetText[],
  pooling: Pooling,
  checkpointPath: string,
  outPath: string,
): SentenceExportResult {
  const model = resolveModel(modelId);
  if (model.kind !== "sentence-level") {
    throw new DataError(`model '${modelId}' is not sentence-level`);
  }
  if (tweets.length === 0) throw new DataError("no tweets to embed");
  const seen = new Set<string>();
  for (const t of tweets) {
    if (seen.has(t.id)) throw new DataError(`duplicate tweet id '${t.id}'`);
    seen.add(t.id);
  }
  const checkpoint = loadSentenceCheckpoint(checkpointPath, model);

  const rows: [string, Float64Array][] = [];
  const emptyTweets: string[] = [];
  for (const tweet of tweets) {
    const tokens = simpleTokenize(tweet.text);
    let states: Float64Array[];
    if (tokens.length > 0) {
      states = checkpoint.encode(tokens);
    } else {
      states = checkpoint.encode(checkpoint.specialTokens);
      emptyTweets.push(tweet.id);
    }
    rows.push([tweet.id, pool(states, pooling, checkpoint.dim)]);
  }

  const content = formatSentenceVectorFile(rows);
  writeAtomic(outPath, content);

  const manifest = finalizeManifest({
    embedder: model.id,
    model_id: model.id,
    model_version: checkpoint.version,
    kind: "sentence-level",
    dim: checkpoint.dim,
    pooling,
    input_sha256: hashLines(tweets.map((t) => t.id)),
    output_sha256: hashText(content),
    row_count: rows.length,
    misses: [],
    empty_tweets: emptyTweets,
  });
  writeAtomic(manifestPath(outPath), JSON.stringify(manifest, null, 2) + "\n");
  return { manifest, rowCount: rows.length, emptyTweets };
}
