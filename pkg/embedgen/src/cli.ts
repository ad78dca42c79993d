#!/usr/bin/env node
/**
 * embedgen: export model vectors into the benchmark's file formats.
 *
 *   embedgen --model glove --checkpoint models/glove.vec \
 *            --in vocab.txt --out glove.vec
 *   embedgen --model bert --checkpoint models/bert.json \
 *            --in tweets.jsonl --out bert.tsv --pooling mean
 *
 * Word-level models (word2vec, fasttext, glove) read a vocabulary (plain
 * token list or a chunks JSONL file); sentence-level models (bert, t5)
 * read tweets (tweets or chunks JSONL). Exit codes: 0 success, 1 usage
 * error, 2 data/contract error.
 */

import { parseArgs } from "node:util";

import { readTweetTexts, readVocabulary } from "./inputs.js";
import { manifestPath } from "./manifest.js";
import { DataError, resolveModel } from "./models.js";
import { generateSentenceVectors, type Pooling } from "./sentenceExport.js";
import { generateWordVectors } from "./wordExport.js";

const USAGE =
  "usage: embedgen --model {word2vec|fasttext|glove|bert|t5} " +
  "--checkpoint <path> --in <tweets|vocab> --out <path> [--pooling {mean|first}]";

class UsageError extends Error {}

export function runCli(argv: string[]): number {
  try {
    const { values } = parseArgsOrUsage(argv);
    const model = values.model as string;
    const kind = resolveModel(model).kind;

    if (kind === "word-level") {
      const vocab = readVocabulary(values.in as string);
      const result = generateWordVectors(
        model,
        vocab,
        values.checkpoint as string,
        values.out as string,
      );
      console.log(
        `wrote ${result.rowCount} vector(s) (${result.misses.length} miss(es)) -> ` +
          `${values.out} + ${manifestPath(values.out as string)}`,
      );
    } else {
      const tweets = readTweetTexts(values.in as string);
      const pooling = (values.pooling ?? "mean") as Pooling;
      const result = generateSentenceVectors(
        model,
        tweets,
        pooling,
        values.checkpoint as string,
        values.out as string,
      );
      console.log(
        `wrote ${result.rowCount} row(s) (${result.emptyTweets.length} empty-flagged) -> ` +
          `${values.out} + ${manifestPath(values.out as string)}`,
      );
    }
    return 0;
  } catch (err) {
    if (err instanceof UsageError) {
      console.error(`embedgen: ${err.message}\n${USAGE}`);
      return 1;
    }
    if (err instanceof DataError || (err as NodeJS.ErrnoException)?.code === "ENOENT") {
      console.error(`embedgen: ${(err as Error).message}`);
      return 2;
    }
    throw err;
  }
}

function parseArgsOrUsage(argv: string[]) {
  let parsed;
  try {
    parsed = parseArgs({
      args: argv,
      options: {
        model: { type: "string" },
        in: { type: "string" },
        out: { type: "string" },
        checkpoint: { type: "string" },
        pooling: { type: "string" },
      },
      allowPositionals: false,
    });
  } catch (err) {
    throw new UsageError((err as Error).message);
  }
  const values = parsed.values;
  for (const required of ["model", "in", "out", "checkpoint"] as const) {
    if (!values[required]) throw new UsageError(`missing --${required}`);
  }
  if (values.pooling && values.pooling !== "mean" && values.pooling !== "first") {
    throw new UsageError(`--pooling must be 'mean' or 'first', got '${values.pooling}'`);
  }
  const known = ["word2vec", "fasttext", "glove", "bert", "t5"];
  if (!known.includes(values.model as string) && !(values.model as string).startsWith("test-")) {
    throw new UsageError(`--model must be one of ${known.join("|")}`);
  }
  return parsed;
}

const invokedDirectly =
  process.argv[1] !== undefined && import.meta.url.endsWith(process.argv[1].split("/").pop()!);
if (invokedDirectly) {
  process.exit(runCli(process.argv.slice(2)));
}
