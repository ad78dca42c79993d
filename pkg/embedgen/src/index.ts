export {
  characterNgrams,
  hashedTokenVector,
  loadSentenceCheckpoint,
  loadWordCheckpoint,
  synthesizeSubwordVector,
} from "./checkpoints.js";
export {
  formatSentenceVectorFile,
  formatWordVectorFile,
  parseWordVectorText,
  writeAtomic,
} from "./formats.js";
export type { WordVectorTable } from "./formats.js";
export { readTweetTexts, readVocabulary, simpleTokenize } from "./inputs.js";
export type { TweetText } from "./inputs.js";
export { finalizeManifest, hashLines, hashText, manifestPath } from "./manifest.js";
export type { ExportManifest } from "./manifest.js";
export { DataError, resolveModel, SENTENCE_LEVEL_DIMS, WORD_LEVEL_DIMS } from "./models.js";
export { generateSentenceVectors } from "./sentenceExport.js";
export type { Pooling, SentenceExportResult } from "./sentenceExport.js";
export { generateWordVectors } from "./wordExport.js";
export type { WordExportResult } from "./wordExport.js";
export { runCli } from "./cli.js";
