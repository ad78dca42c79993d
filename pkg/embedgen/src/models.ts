/** Model families and their pinned embedding dimensions. */

export const WORD_LEVEL_DIMS: Record<string, number> = {
  word2vec: 400,
  fasttext: 400,
  glove: 200,
};

export const SENTENCE_LEVEL_DIMS: Record<string, number> = {
  bert: 768,
  t5: 768,
};

export type ModelKind = "word-level" | "sentence-level";

export interface ModelRef {
  /** Family id: one of the five published families, or a test id. */
  id: string;
  kind: ModelKind;
  /** Pinned dimension for the published families; undefined for test models. */
  pinnedDim?: number;
}

/**
 * Resolve a model id. The five published families carry pinned dimensions;
 * ids beginning with "test-word" / "test-sentence" are free-dimension toy
 * models for exercising the formats. Anything else is unknown.
 */
export function resolveModel(id: string): ModelRef {
  if (id in WORD_LEVEL_DIMS) {
    return { id, kind: "word-level", pinnedDim: WORD_LEVEL_DIMS[id] };
  }
  if (id in SENTENCE_LEVEL_DIMS) {
    return { id, kind: "sentence-level", pinnedDim: SENTENCE_LEVEL_DIMS[id] };
  }
  if (id.startsWith("test-word")) {
    return { id, kind: "word-level" };
  }
  if (id.startsWith("test-sentence")) {
    return { id, kind: "sentence-level" };
  }
  throw new DataError(`unknown model id '${id}'`);
}

/** Raised for bad inputs, missing checkpoints and format violations. */
export class DataError extends Error {}
