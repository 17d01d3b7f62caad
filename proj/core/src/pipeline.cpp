#include "punn/pipeline.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "punn/errors.hpp"
#include "punn/random.hpp"

namespace punn {

namespace {

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_fields(std::string_view line, char sep) {
  std::vector<std::string> fields;
  std::string current;
  bool quoted = false;
  for (char c : line) {
    if (c == '"') {
      quoted = !quoted;
    } else if (c == sep && !quoted) {
      fields.emplace_back(trim(current));
      current.clear();
    } else {
      current += c;
    }
  }
  fields.emplace_back(trim(current));
  return fields;
}

bool is_missing(std::string_view cell) { return cell.empty() || cell == "?"; }

std::optional<double> parse_double(std::string_view s) {
  double v = 0.0;
  const auto* end = s.data() + s.size();
  auto [ptr, ec] = std::from_chars(s.data(), end, v);
  if (ec != std::errc{} || ptr != end) return std::nullopt;
  return v;
}

ColumnKind parse_kind(std::string_view word) {
  if (word == "continuous" || word == "numeric") return ColumnKind::continuous;
  if (word == "nominal") return ColumnKind::nominal;
  if (word == "class") return ColumnKind::class_label;
  if (word == "ignore") return ColumnKind::ignored;
  throw ParseError(fmt::format("unknown column kind '{}'", word));
}

std::size_t vocabulary_index(ColumnSpec& spec, bool declared, const std::string& value) {
  auto it = std::find(spec.vocabulary.begin(), spec.vocabulary.end(), value);
  if (it != spec.vocabulary.end()) return static_cast<std::size_t>(it - spec.vocabulary.begin());
  if (declared) {
    throw SchemaError(fmt::format("value '{}' not in the vocabulary of column '{}'", value, spec.name));
  }
  spec.vocabulary.push_back(value);
  return spec.vocabulary.size() - 1;
}

std::string safe_name(const std::string& name) {
  std::string out = name;
  std::replace(out.begin(), out.end(), '\t', ' ');
  std::replace(out.begin(), out.end(), '\n', ' ');
  return out;
}

}  // namespace

Schema parse_schema(std::string_view text) {
  Schema schema;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto body = trim(line);
    if (body.empty() || body.front() == '#') continue;
    auto fields = split_fields(body, ',');
    if (fields.size() < 2 || fields.size() > 3 || fields[0].empty()) {
      throw ParseError(fmt::format("schema line {}: expected 'name,kind[,values]'", line_no));
    }
    ColumnSpec spec{fields[0], parse_kind(fields[1]), {}};
    if (fields.size() == 3) {
      if (spec.kind != ColumnKind::nominal && spec.kind != ColumnKind::class_label) {
        throw ParseError(fmt::format("schema line {}: only nominal and class columns take values", line_no));
      }
      for (auto& v : split_fields(fields[2], '|')) {
        if (v.empty()) throw ParseError(fmt::format("schema line {}: empty vocabulary value", line_no));
        spec.vocabulary.push_back(std::move(v));
      }
    }
    schema.push_back(std::move(spec));
  }
  const auto classes = std::count_if(schema.begin(), schema.end(), [](const ColumnSpec& c) {
    return c.kind == ColumnKind::class_label;
  });
  if (classes != 1) {
    throw SchemaError(fmt::format("schema must declare exactly one class column, found {}", classes));
  }
  return schema;
}

Schema read_schema(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open schema '{}'", path));
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_schema(buf.str());
}

RawDataset parse_table(std::istream& in, const Schema& schema) {
  RawDataset raw;
  std::vector<std::size_t> target;  // schema column -> raw column, or npos
  std::vector<bool> declared;
  for (const auto& spec : schema) {
    if (spec.kind == ColumnKind::ignored) {
      target.push_back(std::string::npos);
      continue;
    }
    if (spec.kind == ColumnKind::class_label) raw.class_column = raw.columns.size();
    target.push_back(raw.columns.size());
    declared.push_back(!spec.vocabulary.empty());
    raw.columns.push_back(RawColumn{spec, {}, {}});
  }

  std::string line;
  bool have_header = false;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line, ',');
    if (fields.size() != schema.size()) {
      throw ParseError(fmt::format("line {}: {} fields, schema declares {}", line_no, fields.size(),
                                   schema.size()));
    }
    if (!have_header) {
      have_header = true;
      continue;
    }
    for (std::size_t c = 0; c < schema.size(); ++c) {
      if (target[c] == std::string::npos) continue;
      const std::size_t rc = target[c];
      RawColumn& col = raw.columns[rc];
      const std::string& cell = fields[c];
      if (col.is_numeric()) {
        if (is_missing(cell)) {
          col.numbers.emplace_back(std::nullopt);
          continue;
        }
        auto v = parse_double(cell);
        if (!v) {
          throw SchemaError(fmt::format("line {}: '{}' is not a number (column '{}')", line_no, cell,
                                        col.spec.name));
        }
        col.numbers.emplace_back(*v);
      } else if (is_missing(cell)) {
        if (col.spec.kind == ColumnKind::class_label) {
          throw DataError(fmt::format("line {}: missing class label", line_no));
        }
        col.codes.emplace_back(std::nullopt);
      } else {
        col.codes.emplace_back(vocabulary_index(col.spec, declared[rc], cell));
      }
    }
    ++raw.rows;
  }
  if (!have_header) throw ParseError("table has no header line");

  std::vector<bool> seen(raw.class_labels().spec.vocabulary.size(), false);
  for (const auto& code : raw.class_labels().codes) seen[*code] = true;
  if (std::count(seen.begin(), seen.end(), true) < 2) {
    throw DataError("table needs at least two observed classes");
  }
  return raw;
}

RawDataset load_table(const std::string& path, const Schema& schema) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  return parse_table(in, schema);
}

RawDataset impute_missing(const RawDataset& raw) {
  RawDataset out = raw;
  for (auto& col : out.columns) {
    if (col.is_numeric()) {
      double sum = 0.0;
      std::size_t n = 0;
      for (const auto& v : col.numbers) {
        if (v) {
          sum += *v;
          ++n;
        }
      }
      if (n == 0) throw DataError(fmt::format("column '{}' has no observed values", col.spec.name));
      const double mean = sum / static_cast<double>(n);
      for (auto& v : col.numbers) {
        if (!v) v = mean;
      }
    } else {
      std::vector<std::size_t> freq(col.spec.vocabulary.size(), 0);
      std::size_t n = 0;
      for (const auto& c : col.codes) {
        if (c) {
          ++freq[*c];
          ++n;
        }
      }
      if (n == 0) throw DataError(fmt::format("column '{}' has no observed values", col.spec.name));
      // max_element returns the first maximum, i.e. vocabulary order breaks ties.
      const auto mode = static_cast<std::size_t>(std::max_element(freq.begin(), freq.end()) - freq.begin());
      for (auto& c : col.codes) {
        if (!c) c = mode;
      }
    }
  }
  return out;
}

EncodedTable encode_nominal(const RawDataset& raw) {
  EncodedTable table;
  const RawColumn& cls = raw.class_labels();
  table.class_names = cls.spec.vocabulary;
  for (std::size_t c = 0; c < raw.columns.size(); ++c) {
    if (c == raw.class_column) continue;
    const auto& col = raw.columns[c];
    if (col.is_numeric()) {
      table.feature_names.push_back(col.spec.name);
    } else {
      for (const auto& v : col.spec.vocabulary) table.feature_names.push_back(col.spec.name + "=" + v);
    }
  }
  table.inputs = table.feature_names.size();
  table.values.reserve(raw.rows * table.inputs);
  table.labels.reserve(raw.rows);
  for (std::size_t r = 0; r < raw.rows; ++r) {
    for (std::size_t c = 0; c < raw.columns.size(); ++c) {
      if (c == raw.class_column) continue;
      const auto& col = raw.columns[c];
      if (col.is_numeric()) {
        if (!col.numbers[r]) throw DataError(fmt::format("missing value in column '{}'", col.spec.name));
        table.values.push_back(*col.numbers[r]);
      } else {
        if (!col.codes[r]) throw DataError(fmt::format("missing value in column '{}'", col.spec.name));
        for (std::size_t v = 0; v < col.spec.vocabulary.size(); ++v) {
          table.values.push_back(*col.codes[r] == v ? 1.0 : 0.0);
        }
      }
    }
    table.labels.push_back(*cls.codes[r]);
  }
  return table;
}

double NormalizationParams::apply(std::size_t feature, double x) const {
  const double lo = min[feature];
  const double hi = max[feature];
  if (hi == lo) return 1.0;
  return 1.0 + (x - lo) / (hi - lo);
}

NormalizationParams fit_normalization(const EncodedTable& table) {
  NormalizationParams params;
  params.min.assign(table.inputs, std::numeric_limits<double>::infinity());
  params.max.assign(table.inputs, -std::numeric_limits<double>::infinity());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t f = 0; f < table.inputs; ++f) {
      const double x = table.values[r * table.inputs + f];
      if (!std::isfinite(x)) throw NumericError(fmt::format("non-finite value in feature {}", f));
      params.min[f] = std::min(params.min[f], x);
      params.max[f] = std::max(params.max[f], x);
    }
  }
  if (table.rows() == 0) {
    params.min.assign(table.inputs, 0.0);
    params.max.assign(table.inputs, 0.0);
  }
  return params;
}

Dataset apply_normalization(const EncodedTable& table, const NormalizationParams& params) {
  if (params.min.size() != table.inputs || params.max.size() != table.inputs) {
    throw DimensionError("normalization parameters do not match the feature count");
  }
  std::vector<double> values(table.values.size());
  for (std::size_t r = 0; r < table.rows(); ++r) {
    for (std::size_t f = 0; f < table.inputs; ++f) {
      const std::size_t at = r * table.inputs + f;
      if (!std::isfinite(table.values[at])) throw NumericError("non-finite input value");
      values[at] = params.apply(f, table.values[at]);
    }
  }
  return Dataset(table.inputs, table.class_names.size(), std::move(values), table.labels,
                 table.feature_names, table.class_names);
}

NormalizedData fit_apply_normalization(const EncodedTable& table) {
  auto params = fit_normalization(table);
  auto data = apply_normalization(table, params);
  return {std::move(data), std::move(params)};
}

std::vector<std::size_t> stratified_train_counts(std::span<const std::size_t> class_counts,
                                                 double ratio) {
  if (!(ratio > 0.0 && ratio < 1.0)) throw ArgumentError("holdout ratio must lie in (0, 1)");
  std::vector<std::size_t> train(class_counts.size(), 0);
  std::vector<double> exact(class_counts.size(), 0.0);
  std::size_t total = 0;
  for (std::size_t c = 0; c < class_counts.size(); ++c) {
    const std::size_t n = class_counts[c];
    total += n;
    if (n == 0) continue;
    if (n == 1) throw StratificationError(fmt::format("class {} has a single pattern", c));
    exact[c] = ratio * static_cast<double>(n);
    const auto rounded = static_cast<std::size_t>(std::nearbyint(exact[c]));
    train[c] = std::clamp<std::size_t>(rounded, 1, n - 1);
  }

  const double wanted = ratio * static_cast<double>(total);
  const double wanted_int = std::round(wanted);
  if (std::abs(wanted - wanted_int) > 1e-9) return train;

  auto assigned = std::accumulate(train.begin(), train.end(), std::size_t{0});
  const auto target = static_cast<std::size_t>(wanted_int);
  while (assigned != target) {
    const bool add = assigned < target;
    std::size_t pick = class_counts.size();
    double best = 0.0;
    for (std::size_t c = 0; c < class_counts.size(); ++c) {
      const std::size_t n = class_counts[c];
      if (n < 2) continue;
      if (add ? train[c] + 1 > n - 1 : train[c] <= 1) continue;
      const double residual = exact[c] - static_cast<double>(train[c]);
      const double score = add ? residual : -residual;
      if (pick == class_counts.size() || score > best) {
        pick = c;
        best = score;
      }
    }
    if (pick == class_counts.size()) break;
    if (add) {
      ++train[pick];
      ++assigned;
    } else {
      --train[pick];
      --assigned;
    }
  }
  return train;
}

Split stratified_holdout(const Dataset& data, double ratio, std::uint64_t seed) {
  const auto counts = data.class_counts();
  const auto train_counts = stratified_train_counts(counts, ratio);

  std::vector<std::vector<std::size_t>> by_class(data.classes());
  for (std::size_t r = 0; r < data.size(); ++r) by_class[data.label(r)].push_back(r);

  Rng rng = make_rng(seed);
  Split split;
  for (std::size_t c = 0; c < by_class.size(); ++c) {
    auto& rows = by_class[c];
    std::shuffle(rows.begin(), rows.end(), rng);
    const auto cut = static_cast<std::ptrdiff_t>(train_counts[c]);
    split.train_rows.insert(split.train_rows.end(), rows.begin(), rows.begin() + cut);
    split.test_rows.insert(split.test_rows.end(), rows.begin() + cut, rows.end());
  }
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  split.train = data.subset(split.train_rows);
  split.test = data.subset(split.test_rows);
  return split;
}

ProcessedFile preprocess(const std::string& csv_path, const Schema& schema) {
  const auto raw = impute_missing(load_table(csv_path, schema));
  auto normalized = fit_apply_normalization(encode_nominal(raw));
  return {std::move(normalized.data), std::move(normalized.params)};
}

namespace {
constexpr std::string_view kDataMagic = "punn-dataset";
constexpr int kDataVersion = 1;
}  // namespace

void write_processed(std::ostream& out, const ProcessedFile& file) {
  const Dataset& d = file.data;
  out << fmt::format("{}\t{}\ninputs\t{}\nclasses\t{}\npatterns\t{}\n", kDataMagic, kDataVersion,
                     d.inputs(), d.classes(), d.size());
  for (std::size_t f = 0; f < d.inputs(); ++f) {
    const std::string name = d.feature_names().empty() ? fmt::format("x{}", f) : d.feature_names()[f];
    out << fmt::format("feature\t{}\t{:.17g}\t{:.17g}\n", safe_name(name), file.params.min[f],
                       file.params.max[f]);
  }
  for (std::size_t c = 0; c < d.classes(); ++c) {
    const std::string name = d.class_names().empty() ? fmt::format("{}", c) : d.class_names()[c];
    out << fmt::format("class\t{}\n", safe_name(name));
  }
  out << "data\n";
  std::string row;
  for (std::size_t r = 0; r < d.size(); ++r) {
    row.clear();
    for (double x : d.pattern(r)) row += fmt::format("{:.17g}\t", x);
    row += fmt::format("{}\n", d.label(r));
    out << row;
  }
  out << "end\n";
}

void write_processed(const std::string& path, const ProcessedFile& file) {
  std::ofstream out(path);
  if (!out) throw IoError(fmt::format("cannot open '{}' for writing", path));
  write_processed(out, file);
  if (!out) throw IoError(fmt::format("failed writing '{}'", path));
}

ProcessedFile read_processed(std::istream& in) {
  std::string line;
  auto next = [&](std::string_view what) {
    if (!std::getline(in, line)) throw ParseError(fmt::format("dataset: unexpected end before {}", what));
    return split_fields(line, '\t');
  };
  auto header_count = [&](std::string_view key) {
    auto f = next(key);
    if (f.size() != 2 || f[0] != key) throw ParseError(fmt::format("dataset: expected '{}'", key));
    auto v = parse_double(f[1]);
    if (!v || *v < 0) throw ParseError(fmt::format("dataset: bad {}", key));
    return static_cast<std::size_t>(*v);
  };

  auto magic = next("header");
  if (magic.size() != 2 || magic[0] != kDataMagic) throw ParseError("not a punn dataset");
  if (magic[1] != std::to_string(kDataVersion)) {
    throw ParseError(fmt::format("unsupported dataset version {}", magic[1]));
  }
  const std::size_t inputs = header_count("inputs");
  const std::size_t classes = header_count("classes");
  const std::size_t patterns = header_count("patterns");

  ProcessedFile file;
  std::vector<std::string> features;
  std::vector<std::string> class_names;
  for (std::size_t f = 0; f < inputs; ++f) {
    auto fields = next("feature");
    if (fields.size() != 4 || fields[0] != "feature") throw ParseError("dataset: bad feature line");
    auto lo = parse_double(fields[2]);
    auto hi = parse_double(fields[3]);
    if (!lo || !hi) throw ParseError("dataset: bad normalization bounds");
    features.push_back(fields[1]);
    file.params.min.push_back(*lo);
    file.params.max.push_back(*hi);
  }
  for (std::size_t c = 0; c < classes; ++c) {
    auto fields = next("class");
    if (fields.size() != 2 || fields[0] != "class") throw ParseError("dataset: bad class line");
    class_names.push_back(fields[1]);
  }
  if (auto d = next("data"); d.size() != 1 || d[0] != "data") throw ParseError("dataset: expected 'data'");

  std::vector<double> values;
  std::vector<std::size_t> labels;
  values.reserve(patterns * inputs);
  labels.reserve(patterns);
  for (std::size_t r = 0; r < patterns; ++r) {
    auto fields = next("row");
    if (fields.size() != inputs + 1) throw ParseError(fmt::format("dataset: row {} is ragged", r));
    for (std::size_t f = 0; f < inputs; ++f) {
      auto v = parse_double(fields[f]);
      if (!v) throw ParseError(fmt::format("dataset: row {} has a bad number", r));
      values.push_back(*v);
    }
    auto label = parse_double(fields[inputs]);
    if (!label || *label < 0) throw ParseError(fmt::format("dataset: row {} has a bad label", r));
    labels.push_back(static_cast<std::size_t>(*label));
  }
  if (auto e = next("end"); e.size() != 1 || e[0] != "end") throw ParseError("dataset: expected 'end'");

  file.data = Dataset(inputs, classes, std::move(values), std::move(labels), std::move(features),
                      std::move(class_names));
  return file;
}

ProcessedFile read_processed(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(fmt::format("cannot open '{}'", path));
  return read_processed(in);
}

}  // namespace punn
