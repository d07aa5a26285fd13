#include "core/corpus.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/rng.hpp"
#include "core/tsv.hpp"

namespace semmap {

namespace {

void check_unique(const std::vector<std::string>& labels, const char* what) {
  std::set<std::string> seen;
  for (const auto& l : labels) {
    if (l.empty())
      throw ValidationError(std::string(what) + ": empty label");
    if (!seen.insert(l).second)
      throw ValidationError(std::string(what) + ": duplicate label '" + l + "'");
  }
}

std::string fold(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  std::string out;
  out.reserve(e - b);
  for (std::size_t i = b; i < e; ++i)
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(s[i]))));
  return out;
}

bool parse_cell_value(const std::string& cell, std::size_t line_no,
                      const std::string& row_label, const std::string& col_label) {
  std::string f = fold(cell);
  if (f == "y" || f == "1") return true;
  if (f == "n" || f == "0") return false;
  throw ValidationError("line " + std::to_string(line_no) + ": illegal cell value '" +
                        cell + "' at ('" + row_label + "','" + col_label + "')");
}

}  // namespace

ParseResult_BinaryTable parse_binary_table(const std::string& text,
                                           AllFalsePolicy policy) {
  auto rows = read_tsv(text);
  if (rows.size() < 2)
    throw ValidationError("binary table: need a header row and at least one data row");

  // The header may or may not carry a corner cell above the row labels; the
  // first data row disambiguates.
  std::vector<std::string> col_labels = rows[0].cells;
  const std::size_t h = col_labels.size();
  std::size_t body_width = 0;
  if (rows[1].cells.size() == h && h >= 2) {
    col_labels.erase(col_labels.begin());
    body_width = h;
  } else if (rows[1].cells.size() == h + 1) {
    body_width = h + 1;
  } else {
    throw ValidationError("line " + std::to_string(rows[1].line_no) +
                          ": expected " + std::to_string(h) + " or " +
                          std::to_string(h + 1) + " cells to match the header, got " +
                          std::to_string(rows[1].cells.size()));
  }
  check_unique(col_labels, "binary table columns");

  BinaryTable table;
  table.col_labels = col_labels;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != body_width)
      throw ValidationError("line " + std::to_string(row.line_no) + ": expected " +
                            std::to_string(body_width) + " cells, got " +
                            std::to_string(row.cells.size()));
    table.row_labels.push_back(row.cells[0]);
    for (std::size_t c = 0; c + 1 < body_width; ++c)
      table.cells.push_back(parse_cell_value(row.cells[c + 1], row.line_no,
                                             row.cells[0], col_labels[c])
                                ? 1
                                : 0);
  }
  check_unique(table.row_labels, "binary table rows");

  // All-N rows and columns carry no co-expression signal.
  ParseResult_BinaryTable result;
  const std::size_t ncols = table.col_labels.size();
  std::vector<bool> keep_row(table.row_labels.size(), true);
  std::vector<bool> keep_col(ncols, true);
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    bool any = false;
    for (std::size_t c = 0; c < ncols; ++c) any = any || table.at(r, c);
    if (!any) {
      if (policy == AllFalsePolicy::kReject)
        throw ValidationError("binary table: row '" + table.row_labels[r] +
                              "' is all N");
      keep_row[r] = false;
      result.warnings.push_back("dropped all-N row '" + table.row_labels[r] + "'");
    }
  }
  for (std::size_t c = 0; c < ncols; ++c) {
    bool any = false;
    for (std::size_t r = 0; r < table.row_labels.size(); ++r)
      any = any || table.at(r, c);
    if (!any) {
      if (policy == AllFalsePolicy::kReject)
        throw ValidationError("binary table: column '" + table.col_labels[c] +
                              "' is all N");
      keep_col[c] = false;
      result.warnings.push_back("dropped all-N column '" + table.col_labels[c] + "'");
    }
  }

  if (result.warnings.empty()) {
    result.table = std::move(table);
    return result;
  }
  BinaryTable pruned;
  for (std::size_t c = 0; c < ncols; ++c)
    if (keep_col[c]) pruned.col_labels.push_back(table.col_labels[c]);
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    if (!keep_row[r]) continue;
    pruned.row_labels.push_back(table.row_labels[r]);
    for (std::size_t c = 0; c < ncols; ++c)
      if (keep_col[c]) pruned.cells.push_back(table.at(r, c) ? 1 : 0);
  }
  if (pruned.row_labels.empty() || pruned.col_labels.empty())
    throw ValidationError("binary table: empty after dropping all-N lines");
  result.table = std::move(pruned);
  return result;
}

std::string binary_table_to_tsv(const BinaryTable& table) {
  std::ostringstream out;
  out << "id";
  for (const auto& c : table.col_labels) out << '\t' << c;
  out << '\n';
  for (std::size_t r = 0; r < table.row_labels.size(); ++r) {
    out << table.row_labels[r];
    for (std::size_t c = 0; c < table.col_labels.size(); ++c)
      out << '\t' << (table.at(r, c) ? 'Y' : 'N');
    out << '\n';
  }
  return out.str();
}

CorpusTable parse_corpus(const std::string& text) {
  auto rows = read_tsv(text);
  if (rows.size() < 2)
    throw ValidationError("corpus: need a header row and at least one context row");
  const auto& header = rows[0].cells;
  if (header.empty() || header[0] != "context")
    throw ValidationError("line " + std::to_string(rows[0].line_no) +
                          ": corpus header must start with 'context'");

  CorpusTable table;
  // column index -> (language index, is_feature)
  struct ColBind {
    std::size_t lang;
    bool feature;
  };
  std::vector<ColBind> binds;
  std::vector<std::string> feature_owners;
  for (std::size_t c = 1; c < header.size(); ++c) {
    const std::string& name = header[c];
    const std::size_t colon = name.rfind(":feature");
    if (colon != std::string::npos && colon + 8 == name.size() && colon > 0) {
      feature_owners.push_back(name.substr(0, colon));
      binds.push_back({0, true});  // language resolved below
    } else {
      binds.push_back({table.languages.size(), false});
      table.languages.push_back(name);
    }
  }
  check_unique(table.languages, "corpus languages");
  {
    std::set<std::string> seen;
    std::size_t fi = 0;
    for (std::size_t c = 0; c < binds.size(); ++c) {
      if (!binds[c].feature) continue;
      const std::string& owner = feature_owners[fi++];
      if (!seen.insert(owner).second)
        throw ValidationError("corpus: duplicate feature column for language '" +
                              owner + "'");
      auto it = std::find(table.languages.begin(), table.languages.end(), owner);
      if (it == table.languages.end())
        throw ValidationError("corpus: feature column '" + owner +
                              ":feature' has no matching language column");
      binds[c].lang = static_cast<std::size_t>(it - table.languages.begin());
    }
  }
  if (table.languages.empty())
    throw ValidationError("corpus: no language columns");

  const std::size_t width = header.size();
  table.cells.resize(0);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != width)
      throw ValidationError("line " + std::to_string(row.line_no) + ": expected " +
                            std::to_string(width) + " cells, got " +
                            std::to_string(row.cells.size()));
    table.context_ids.push_back(row.cells[0]);
    std::vector<CorpusCell> ctx_cells(table.languages.size());
    for (std::size_t c = 1; c < width; ++c) {
      const std::string& cell = row.cells[c];
      const ColBind& bind = binds[c - 1];
      if (cell.empty()) continue;
      if (bind.feature)
        ctx_cells[bind.lang].feature = cell;
      else
        ctx_cells[bind.lang].form = cell;
    }
    for (auto& cc : ctx_cells) table.cells.push_back(std::move(cc));
  }
  check_unique(table.context_ids, "corpus contexts");
  return table;
}

std::string corpus_to_tsv(const CorpusTable& table) {
  const std::size_t nl = table.languages.size();
  std::vector<bool> has_feature(nl, false);
  for (std::size_t i = 0; i < table.context_ids.size(); ++i)
    for (std::size_t l = 0; l < nl; ++l)
      if (table.at(i, l).feature) has_feature[l] = true;

  std::ostringstream out;
  out << "context";
  for (std::size_t l = 0; l < nl; ++l) {
    out << '\t' << table.languages[l];
    if (has_feature[l]) out << '\t' << table.languages[l] << ":feature";
  }
  out << '\n';
  for (std::size_t i = 0; i < table.context_ids.size(); ++i) {
    out << table.context_ids[i];
    for (std::size_t l = 0; l < nl; ++l) {
      const CorpusCell& cell = table.at(i, l);
      out << '\t' << (cell.form ? *cell.form : "");
      if (has_feature[l]) out << '\t' << (cell.feature ? *cell.feature : "");
    }
    out << '\n';
  }
  return out.str();
}

TokenTable comparison_key(const CorpusTable& table, CompareMode mode) {
  TokenTable tokens;
  tokens.context_ids = table.context_ids;
  tokens.languages = table.languages;
  tokens.tokens.reserve(table.cells.size());
  for (std::size_t i = 0; i < table.context_ids.size(); ++i) {
    for (std::size_t l = 0; l < table.languages.size(); ++l) {
      const CorpusCell& cell = table.at(i, l);
      if (!cell.form) {
        tokens.tokens.emplace_back(std::nullopt);
        continue;
      }
      if (mode == CompareMode::kLexeme) {
        tokens.tokens.emplace_back(fold(*cell.form));
      } else {
        if (!cell.feature)
          throw ValidationError("comparison key: FEATURE mode but cell ('" +
                                table.context_ids[i] + "','" + table.languages[l] +
                                "') has no feature annotation");
        tokens.tokens.emplace_back(*cell.feature);
      }
    }
  }
  return tokens;
}

PointCloud swiss_roll(std::size_t n, double noise_sd, std::uint64_t seed) {
  if (n < 10)
    throw ValidationError("swiss_roll: need n >= 10, got " + std::to_string(n));
  if (noise_sd < 0.0) throw ValidationError("swiss_roll: negative noise level");

  PointCloud cloud;
  cloud.dim = 3;
  cloud.intrinsic_dim = 2;
  cloud.coords.reserve(n * 3);
  cloud.intrinsic.reserve(n * 2);
  Rng rng(seed);
  for (std::size_t i = 0; i < n; ++i) {
    const double t = rng.uniform(1.5 * std::numbers::pi, 4.5 * std::numbers::pi);
    const double y = rng.uniform(0.0, 21.0);
    double x = t * std::cos(t);
    double z = t * std::sin(t);
    double yy = y;
    if (noise_sd > 0.0) {
      x += noise_sd * rng.normal();
      yy += noise_sd * rng.normal();
      z += noise_sd * rng.normal();
    }
    cloud.coords.push_back(x);
    cloud.coords.push_back(yy);
    cloud.coords.push_back(z);
    cloud.intrinsic.push_back(t);
    cloud.intrinsic.push_back(y);
  }
  return cloud;
}

PointCloud parse_point_cloud(const std::string& text) {
  auto rows = read_tsv(text);
  if (rows.size() < 2)
    throw ValidationError("point cloud: need a header row and at least one point");
  const auto& header = rows[0].cells;
  PointCloud cloud;
  for (const auto& h : header) {
    if (h.size() > 1 && h[0] == 'p')
      ++cloud.dim;
    else if (h.size() > 1 && h[0] == 'i')
      ++cloud.intrinsic_dim;
    else
      throw ValidationError("line " + std::to_string(rows[0].line_no) +
                            ": point cloud columns are p<k> or i<k>, got '" + h + "'");
  }
  if (cloud.dim == 0)
    throw ValidationError("point cloud: no coordinate columns");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != header.size())
      throw ValidationError("line " + std::to_string(row.line_no) + ": expected " +
                            std::to_string(header.size()) + " cells, got " +
                            std::to_string(row.cells.size()));
    for (std::size_t c = 0; c < cloud.dim; ++c) {
      const double v = parse_double(row.cells[c], row.line_no);
      if (!std::isfinite(v))
        throw ValidationError("line " + std::to_string(row.line_no) +
                              ": non-finite coordinate");
      cloud.coords.push_back(v);
    }
    for (std::size_t c = cloud.dim; c < header.size(); ++c)
      cloud.intrinsic.push_back(parse_double(row.cells[c], row.line_no));
  }
  return cloud;
}

std::string point_cloud_to_tsv(const PointCloud& cloud) {
  std::ostringstream out;
  for (std::size_t d = 0; d < cloud.dim; ++d) {
    if (d) out << '\t';
    out << 'p' << d;
  }
  for (std::size_t d = 0; d < cloud.intrinsic_dim; ++d) out << '\t' << 'i' << d;
  out << '\n';
  const std::size_t n = cloud.size();
  for (std::size_t p = 0; p < n; ++p) {
    for (std::size_t d = 0; d < cloud.dim; ++d) {
      if (d) out << '\t';
      out << format_double(cloud.coords[p * cloud.dim + d]);
    }
    for (std::size_t d = 0; d < cloud.intrinsic_dim; ++d)
      out << '\t' << format_double(cloud.intrinsic[p * cloud.intrinsic_dim + d]);
    out << '\n';
  }
  return out.str();
}

}  // namespace semmap
