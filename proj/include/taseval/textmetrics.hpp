#pragma once

#include <string>
#include <utility>
#include <vector>

namespace taseval {

/// Normalized edit distance similarity: 1 - Levenshtein / max-length over
/// NFC-normalized code points. Both empty -> 1.0; exactly one empty -> 0.0.
double ned(const std::string& pred, const std::string& gt);

/// Exact match after NFC normalization and whitespace stripping.
bool transcript_matches(const std::string& pred, const std::string& gt);

/// Fraction of (prediction, ground truth) rows that match exactly.
double rec_acc(const std::vector<std::pair<std::string, std::string>>& rows);

}  // namespace taseval
