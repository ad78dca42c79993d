/**
 * Input readers. Word-level exports take a vocabulary: either a plain text
 * file (one lowercase token per line, '#' comments) or a chunks JSONL file
 * from the harness, whose word_tokens are unioned. Sentence-level exports
 * take tweets: a tweets JSONL file ({"id", "text"} per line) or a chunks
 * JSONL file (retained tweets flattened in order).
 */

import { existsSync, readFileSync } from "node:fs";

import { DataError } from "./models.js";

export interface TweetText {
  id: string;
  text: string;
}

function readLines(path: string): string[] {
  if (!existsSync(path)) throw new DataError(`input file not found: ${path}`);
  return readFileSync(path, "utf-8").split("\n");
}

function looksLikeJsonl(lines: string[]): boolean {
  const first = lines.find((l) => l.trim().length > 0);
  return first !== undefined && first.trim().startsWith("{");
}

interface ChunkRecord {
  chunk_id: number;
  tweets: { id: string; word_tokens: string[]; original_text?: string }[];
}

function parseJsonl(lines: string[], path: string): unknown[] {
  const out: unknown[] = [];
  lines.forEach((line, i) => {
    if (!line.trim()) return;
    try {
      out.push(JSON.parse(line));
    } catch (err) {
      throw new DataError(`${path}: line ${i + 1}: invalid JSON: ${String(err)}`);
    }
  });
  return out;
}

export function readVocabulary(path: string): string[] {
  const lines = readLines(path);
  const vocab = new Set<string>();
  if (looksLikeJsonl(lines)) {
    for (const obj of parseJsonl(lines, path) as ChunkRecord[]) {
      if (!Array.isArray(obj.tweets)) {
        throw new DataError(`${path}: not a chunks file (missing 'tweets')`);
      }
      for (const tweet of obj.tweets) {
        for (const token of tweet.word_tokens ?? []) vocab.add(token.toLowerCase());
      }
    }
  } else {
    for (const raw of lines) {
      const line = raw.trim();
      if (!line || line.startsWith("#")) continue;
      vocab.add(line.toLowerCase());
    }
  }
  if (vocab.size === 0) throw new DataError(`${path}: empty vocabulary`);
  return Array.from(vocab).sort();
}

export function readTweetTexts(path: string): TweetText[] {
  const lines = readLines(path);
  if (!looksLikeJsonl(lines)) {
    throw new DataError(`${path}: expected a tweets or chunks JSONL file`);
  }
  const tweets: TweetText[] = [];
  const seen = new Set<string>();
  const push = (id: string, text: string, lineno: number) => {
    if (seen.has(id)) throw new DataError(`${path}: line ${lineno}: duplicate tweet id '${id}'`);
    seen.add(id);
    tweets.push({ id, text });
  };
  parseJsonl(lines, path).forEach((obj, i) => {
    const record = obj as Record<string, unknown>;
    if (Array.isArray(record.tweets)) {
      for (const t of record.tweets as ChunkRecord["tweets"]) {
        push(t.id, t.original_text ?? (t.word_tokens ?? []).join(" "), i + 1);
      }
    } else if (typeof record.id === "string" && typeof record.text === "string") {
      push(record.id, record.text, i + 1);
    } else {
      throw new DataError(`${path}: line ${i + 1}: unrecognized record shape`);
    }
  });
  if (tweets.length === 0) throw new DataError(`${path}: no tweets found`);
  return tweets;
}

/** Whitespace tokenization with edge punctuation stripped, lowercased. */
export function simpleTokenize(text: string): string[] {
  return text
    .toLowerCase()
    .split(/\s+/)
    .map((t) => t.replace(/^[^\p{L}\p{N}]+|[^\p{L}\p{N}]+$/gu, ""))
    .filter((t) => t.length > 0);
}
