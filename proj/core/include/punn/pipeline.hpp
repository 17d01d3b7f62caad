#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "punn/dataset.hpp"

namespace punn {

enum class ColumnKind { continuous, nominal, class_label, ignored };

/// One line of a schema file: `name,kind[,v1|v2|...]` where kind is
/// continuous, nominal, class or ignore. A declared vocabulary fixes the
/// value order (used for mode tie-breaks and class indices); without one the
/// vocabulary is the order of first appearance in the data.
struct ColumnSpec {
  std::string name;
  ColumnKind kind = ColumnKind::continuous;
  std::vector<std::string> vocabulary;
};

using Schema = std::vector<ColumnSpec>;

/// Throws ParseError on an unknown kind or a malformed line, SchemaError when
/// the schema does not contain exactly one class column.
Schema parse_schema(std::string_view text);
Schema read_schema(const std::string& path);

/// A loaded column. Continuous cells live in `numbers`, nominal and class
/// cells are indices into `spec.vocabulary` in `codes`; std::nullopt marks a
/// missing cell. Only the vector matching the kind is populated.
struct RawColumn {
  ColumnSpec spec;
  std::vector<std::optional<double>> numbers;
  std::vector<std::optional<std::size_t>> codes;

  bool is_numeric() const { return spec.kind == ColumnKind::continuous; }
};

/// Table as read from disk, ignored columns dropped, class column included.
struct RawDataset {
  std::vector<RawColumn> columns;
  std::size_t rows = 0;
  std::size_t class_column = 0;

  const RawColumn& class_labels() const { return columns[class_column]; }
};

/// Parses header + rows of comma-separated values. "?" and empty cells are
/// missing. Throws ParseError on a ragged row or a header whose column count
/// differs from the schema, SchemaError on an unknown nominal value or an
/// unparsable number, DataError on a missing class label or fewer than two
/// observed classes.
RawDataset parse_table(std::istream& in, const Schema& schema);
RawDataset load_table(const std::string& path, const Schema& schema);

/// Replaces missing nominal cells by the column mode and missing continuous
/// cells by the column mean, both over all rows. Mode ties go to the value
/// that comes first in the vocabulary. Throws DataError when a column has no
/// observed value.
RawDataset impute_missing(const RawDataset& raw);

/// Fully numeric table: nominal columns expanded to one 0/1 indicator per
/// vocabulary value, continuous columns passed through, labels as indices.
struct EncodedTable {
  std::size_t inputs = 0;
  std::vector<std::string> feature_names;
  std::vector<double> values;  // row-major rows x inputs
  std::vector<std::size_t> labels;
  std::vector<std::string> class_names;

  std::size_t rows() const { return labels.size(); }
};

/// Throws DataError if any cell is still missing.
EncodedTable encode_nominal(const RawDataset& raw);

/// Per-feature affine map x' = 1 + (x - min) / (max - min); a constant
/// feature maps to 1.
struct NormalizationParams {
  std::vector<double> min;
  std::vector<double> max;

  double apply(std::size_t feature, double x) const;
};

/// Throws NumericError on a non-finite value.
NormalizationParams fit_normalization(const EncodedTable& table);
/// Throws DimensionError when the feature count differs.
Dataset apply_normalization(const EncodedTable& table, const NormalizationParams& params);

struct NormalizedData {
  Dataset data;
  NormalizationParams params;
};

/// Fits min/max on the whole table and maps it into [1, 2].
NormalizedData fit_apply_normalization(const EncodedTable& table);

/// Per-class training counts for a holdout split: each class gets
/// nearbyint(ratio * n_c) (ties to even), clamped to [1, n_c - 1]. When
/// ratio * N is an integer the counts are then adjusted one at a time until
/// they sum to it. Classes with no patterns get 0. Throws
/// StratificationError on a class with exactly one pattern.
std::vector<std::size_t> stratified_train_counts(std::span<const std::size_t> class_counts,
                                                 double ratio);

struct Split {
  Dataset train;
  Dataset test;
  std::vector<std::size_t> train_rows;  // ascending indices into the source
  std::vector<std::size_t> test_rows;
};

/// Stratified holdout: per class, a seeded shuffle picks the training rows.
/// Both partitions keep the source row order.
Split stratified_holdout(const Dataset& data, double ratio, std::uint64_t seed);

/// Contents of a processed dataset file.
struct ProcessedFile {
  Dataset data;
  NormalizationParams params;
};

/// CSV + schema -> impute -> encode -> normalize.
ProcessedFile preprocess(const std::string& csv_path, const Schema& schema);

/// Versioned text format: a header with k, L, N, feature names with their
/// normalization bounds and class names, then one row per pattern. Numbers
/// are written with 17 significant digits.
void write_processed(std::ostream& out, const ProcessedFile& file);
void write_processed(const std::string& path, const ProcessedFile& file);
ProcessedFile read_processed(std::istream& in);
ProcessedFile read_processed(const std::string& path);

}  // namespace punn
