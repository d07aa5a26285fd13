#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace semmap {

// Items x features Y/N matrix (forms x functions, or constructions x
// contexts). Labels are unique per axis; validation flags all-N rows and
// columns and either drops them (with a warning) or rejects the table.
struct BinaryTable {
  std::vector<std::string> row_labels;
  std::vector<std::string> col_labels;
  std::vector<std::uint8_t> cells;  // row-major, 1 = Y

  bool at(std::size_t r, std::size_t c) const {
    return cells[r * col_labels.size() + c] != 0;
  }
  bool operator==(const BinaryTable&) const = default;
};

enum class AllFalsePolicy { kDrop, kReject };

// Per (context, language) translation cell. A missing translation is an
// absent form, never an empty string.
struct CorpusCell {
  std::optional<std::string> form;
  std::optional<std::string> feature;
  bool operator==(const CorpusCell&) const = default;
};

// Contexts x languages table of translation cells.
struct CorpusTable {
  std::vector<std::string> context_ids;
  std::vector<std::string> languages;
  std::vector<CorpusCell> cells;  // row-major: context * n_languages + language

  const CorpusCell& at(std::size_t ctx, std::size_t lang) const {
    return cells[ctx * languages.size() + lang];
  }
  CorpusCell& at(std::size_t ctx, std::size_t lang) {
    return cells[ctx * languages.size() + lang];
  }
  bool operator==(const CorpusTable&) const = default;
};

// Coordinate vectors plus optional per-point intrinsic parameters carried
// along by synthetic generators as ground truth.
struct PointCloud {
  std::size_t dim = 0;
  std::size_t intrinsic_dim = 0;
  std::vector<double> coords;     // n x dim, row-major
  std::vector<double> intrinsic;  // n x intrinsic_dim, row-major

  std::size_t size() const { return dim ? coords.size() / dim : 0; }
  double coord(std::size_t p, std::size_t d) const { return coords[p * dim + d]; }
  bool operator==(const PointCloud&) const = default;
};

// How two cells are compared: by the translation's lexical form or by its
// annotated grammatical feature.
enum class CompareMode { kLexeme, kFeature };

// Comparison token; absent = MISSING, which propagates through distances.
using Token = std::optional<std::string>;

struct TokenTable {
  std::vector<std::string> context_ids;
  std::vector<std::string> languages;
  std::vector<Token> tokens;  // row-major like CorpusTable

  const Token& at(std::size_t ctx, std::size_t lang) const {
    return tokens[ctx * languages.size() + lang];
  }
};

struct ParseResult_BinaryTable {
  BinaryTable table;
  std::vector<std::string> warnings;  // dropped all-N rows/columns
};

// First row = column labels (an optional leading corner cell is accepted),
// first column = row labels, cells in {Y, N, 1, 0} case-insensitive.
ParseResult_BinaryTable parse_binary_table(
    const std::string& text, AllFalsePolicy policy = AllFalsePolicy::kDrop);

std::string binary_table_to_tsv(const BinaryTable& table);

// Header: "context", then language names; a "<lang>:feature" column attaches
// feature labels to that language's cells. Empty cells record MISSING.
CorpusTable parse_corpus(const std::string& text);

std::string corpus_to_tsv(const CorpusTable& table);

// LEXEME: case-folded, whitespace-trimmed form text. FEATURE: the annotated
// feature label, which every non-missing cell must carry.
TokenTable comparison_key(const CorpusTable& table, CompareMode mode);

// 3-D spiral with 2-D intrinsic structure: (t cos t, y, t sin t) with t
// uniform on [1.5*pi, 4.5*pi] and y uniform on [0, 21], plus optional
// Gaussian coordinate noise. Deterministic per seed.
PointCloud swiss_roll(std::size_t n, double noise_sd, std::uint64_t seed);

PointCloud parse_point_cloud(const std::string& text);
std::string point_cloud_to_tsv(const PointCloud& cloud);

}  // namespace semmap
