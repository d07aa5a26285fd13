#include "core/interpret.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <sstream>

#include "core/error.hpp"
#include "core/tsv.hpp"

namespace semmap {

namespace {

constexpr const char* kMissingLabel = "MISSING";

void check_label_match(const std::vector<std::string>& a,
                       const std::vector<std::string>& b, const char* what) {
  if (a == b) return;
  std::set<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
  std::string only_a, only_b;
  for (const auto& x : sa)
    if (!sb.count(x)) only_a += " '" + x + "'";
  for (const auto& x : sb)
    if (!sa.count(x)) only_b += " '" + x + "'";
  if (only_a.empty() && only_b.empty())
    throw ValidationError(std::string(what) + ": same labels but different order");
  throw ValidationError(std::string(what) + ": label mismatch; only in first:" +
                        (only_a.empty() ? " none" : only_a) +
                        "; only in second:" + (only_b.empty() ? " none" : only_b));
}

}  // namespace

std::vector<ColoringLayer> color_layers(const MdsSolution& solution,
                                        const CorpusTable& table,
                                        CompareMode mode) {
  check_label_match(solution.labels, table.context_ids, "color_layers");
  const TokenTable tokens = comparison_key(table, mode);

  // One shared palette across the layer set.
  std::set<std::string> categories;
  for (const Token& t : tokens.tokens)
    categories.insert(t ? *t : kMissingLabel);
  std::vector<std::string> palette(categories.begin(), categories.end());

  std::vector<ColoringLayer> layers;
  for (std::size_t l = 0; l < table.languages.size(); ++l) {
    ColoringLayer layer;
    layer.language = table.languages[l];
    layer.palette = palette;
    for (std::size_t i = 0; i < table.context_ids.size(); ++i) {
      const Token& t = tokens.at(i, l);
      const std::string label = t ? *t : kMissingLabel;
      layer.point_labels.push_back(label);
      const auto it = std::lower_bound(palette.begin(), palette.end(), label);
      layer.palette_index.push_back(
          static_cast<std::size_t>(it - palette.begin()));
    }
    layers.push_back(std::move(layer));
  }
  return layers;
}

AnnotationTable AnnotationTable::from_tsv(const std::string& text) {
  auto rows = read_tsv(text);
  if (rows.size() < 2)
    throw ValidationError("annotations: need a header row and data rows");
  const auto& header = rows[0].cells;
  if (header.empty() || header[0] != "context")
    throw ValidationError("line " + std::to_string(rows[0].line_no) +
                          ": annotations header must start with 'context'");
  AnnotationTable table;
  table.variables.assign(header.begin() + 1, header.end());
  if (table.variables.empty())
    throw ValidationError("annotations: no variable columns");
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (row.cells.size() != header.size())
      throw ValidationError("line " + std::to_string(row.line_no) +
                            ": expected " + std::to_string(header.size()) +
                            " cells, got " + std::to_string(row.cells.size()));
    table.context_ids.push_back(row.cells[0]);
    for (std::size_t c = 1; c < row.cells.size(); ++c) {
      if (row.cells[c] == "0")
        table.values.push_back(0);
      else if (row.cells[c] == "1")
        table.values.push_back(1);
      else
        throw ValidationError("line " + std::to_string(row.line_no) +
                              ": annotation values are 0 or 1, got '" +
                              row.cells[c] + "'");
    }
  }
  return table;
}

DimensionReport dimension_regression(const MdsSolution& solution,
                                     const AnnotationTable& annotations) {
  const std::size_t n = solution.labels.size();
  check_label_match(solution.labels, annotations.context_ids,
                    "dimension_regression");

  const std::size_t nv = annotations.variables.size();
  for (std::size_t v = 0; v < nv; ++v) {
    bool any0 = false, any1 = false;
    for (std::size_t i = 0; i < n; ++i) {
      (annotations.values[i * nv + v] ? any1 : any0) = true;
    }
    if (!any0 || !any1)
      throw ValidationError("dimension_regression: variable '" +
                            annotations.variables[v] +
                            "' is constant; correlation undefined");
  }

  DimensionReport report;
  for (std::size_t d = 0; d < solution.coords.cols(); ++d) {
    for (std::size_t v = 0; v < nv; ++v) {
      double mx = 0.0, my = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        mx += annotations.values[i * nv + v];
        my += solution.coords(i, d);
      }
      mx /= static_cast<double>(n);
      my /= static_cast<double>(n);
      double sxx = 0.0, sxy = 0.0, syy = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        const double dx = annotations.values[i * nv + v] - mx;
        const double dy = solution.coords(i, d) - my;
        sxx += dx * dx;
        sxy += dx * dy;
        syy += dy * dy;
      }
      RegressionRow row;
      row.dimension = d + 1;
      row.variable = annotations.variables[v];
      row.n = n;
      row.slope = sxy / sxx;
      row.intercept = my - row.slope * mx;
      if (syy > 0.0) {
        row.r2 = (sxy * sxy) / (sxx * syy);
        const double residual = syy - row.slope * sxy;
        if (n > 2 && residual > 0.0) {
          row.t_stat = row.slope / std::sqrt(residual /
                                             (static_cast<double>(n - 2) * sxx));
        } else {
          row.t_stat = row.slope >= 0.0
                           ? std::numeric_limits<double>::infinity()
                           : -std::numeric_limits<double>::infinity();
        }
      } else {
        // Coordinate is constant (e.g. a degenerate zero column).
        row.r2 = 0.0;
        row.t_stat = 0.0;
      }
      report.rows.push_back(std::move(row));
    }
  }
  std::stable_sort(report.rows.begin(), report.rows.end(),
                   [](const RegressionRow& a, const RegressionRow& b) {
                     return a.r2 > b.r2;
                   });
  return report;
}

std::string DimensionReport::to_tsv() const {
  std::ostringstream out;
  out << "dimension\tvariable\tslope\tintercept\tr2\tt\tn\n";
  for (const RegressionRow& r : rows) {
    out << r.dimension << '\t' << r.variable << '\t' << format_double(r.slope)
        << '\t' << format_double(r.intercept) << '\t' << format_double(r.r2)
        << '\t' << format_double(r.t_stat) << '\t' << r.n << '\n';
  }
  return out.str();
}

SubsetReport subset_report(const CorpusTable& table, const std::string& category,
                           CompareMode mode) {
  const TokenTable tokens = comparison_key(table, mode);
  const std::size_t nc = table.context_ids.size();

  // Usage set per language: contexts whose token equals the category.
  std::vector<std::set<std::size_t>> sets;
  std::vector<std::string> owners;
  for (std::size_t l = 0; l < table.languages.size(); ++l) {
    std::set<std::size_t> s;
    for (std::size_t i = 0; i < nc; ++i) {
      const Token& t = tokens.at(i, l);
      if (t && *t == category) s.insert(i);
    }
    if (!s.empty()) {
      owners.push_back(table.languages[l]);
      sets.push_back(std::move(s));
    }
  }
  if (owners.empty())
    throw ValidationError("subset_report: category '" + category +
                          "' occurs in no language");

  SubsetReport report;
  report.category = category;
  for (std::size_t a = 0; a < owners.size(); ++a) {
    for (std::size_t b = 0; b < owners.size(); ++b) {
      if (a == b) continue;
      SubsetPair pair;
      pair.lang1 = owners[a];
      pair.lang2 = owners[b];
      pair.size1 = sets[a].size();
      pair.size2 = sets[b].size();
      std::size_t common = 0;
      for (std::size_t x : sets[a]) common += sets[b].count(x);
      pair.only_in_first = sets[a].size() - common;
      pair.containment =
          static_cast<double>(common) / static_cast<double>(sets[a].size());
      report.pairs.push_back(std::move(pair));
    }
  }

  // Chain by ascending set size; stable, so equal sizes keep language order.
  std::vector<std::size_t> order(owners.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return sets[a].size() < sets[b].size();
  });
  for (std::size_t i = 0; i < order.size(); ++i) {
    report.chain.push_back(owners[order[i]]);
    report.chain_size.push_back(sets[order[i]].size());
    if (i + 1 < order.size()) {
      const auto& small = sets[order[i]];
      const auto& large = sets[order[i + 1]];
      std::size_t missing = 0;
      for (std::size_t x : small) missing += large.count(x) ? 0 : 1;
      report.violations.push_back(missing);
    }
  }
  return report;
}

std::string SubsetReport::to_tsv() const {
  std::ostringstream out;
  out << "# subset report for category: " << category << '\n';
  out << "# pair\tlang1\tlang2\tsize1\tsize2\tonly_in_first\tcontainment\n";
  for (const SubsetPair& p : pairs) {
    out << "pair\t" << p.lang1 << '\t' << p.lang2 << '\t' << p.size1 << '\t'
        << p.size2 << '\t' << p.only_in_first << '\t'
        << format_double(p.containment) << '\n';
  }
  out << "# chain\tposition\tlanguage\tsize\n";
  for (std::size_t i = 0; i < chain.size(); ++i)
    out << "chain\t" << i << '\t' << chain[i] << '\t' << chain_size[i] << '\n';
  out << "# link\tsmaller\tlarger\tviolations\n";
  for (std::size_t i = 0; i < violations.size(); ++i)
    out << "link\t" << chain[i] << '\t' << chain[i + 1] << '\t' << violations[i]
        << '\n';
  return out.str();
}

}  // namespace semmap
