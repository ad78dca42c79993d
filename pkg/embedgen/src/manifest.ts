/**
 * Export manifests: enough provenance to reproduce a file bit for bit.
 *
 * The manifest hash covers every field except the creation timestamp and
 * the hash itself, so re-running a pinned export yields the same
 * manifest_sha256. Set SOURCE_DATE_EPOCH to pin created_at too.
 */

import { createHash } from "node:crypto";

export interface ExportManifest {
  embedder: string;
  model_id: string;
  model_version: string;
  kind: "word-level" | "sentence-level";
  dim: number;
  pooling: "mean" | "first" | null;
  input_sha256: string; // hash of the vocabulary list or the tweet-id list
  output_sha256: string; // hash of the emitted vector file
  row_count: number;
  misses: string[]; // requested vocabulary not covered (word-level)
  empty_tweets: string[]; // tweets pooled from special tokens (sentence-level)
  created_at: string;
  manifest_sha256: string;
}

export function hashLines(lines: string[]): string {
  return `sha256:${createHash("sha256").update(lines.join("\n"), "utf-8").digest("hex")}`;
}

export function hashText(text: string): string {
  return `sha256:${createHash("sha256").update(text, "utf-8").digest("hex")}`;
}

export function createdAt(): string {
  const epoch = process.env.SOURCE_DATE_EPOCH;
  const date = epoch ? new Date(Number(epoch) * 1000) : new Date();
  return date.toISOString();
}

export function finalizeManifest(
  fields: Omit<ExportManifest, "created_at" | "manifest_sha256">,
): ExportManifest {
  const stable = JSON.stringify(fields, Object.keys(fields).sort());
  return {
    ...fields,
    created_at: createdAt(),
    manifest_sha256: hashText(stable),
  };
}

export function manifestPath(outPath: string): string {
  return `${outPath}.manifest.json`;
}
