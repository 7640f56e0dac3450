#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

#include "cloudmcdm/hierarchy.hpp"

namespace cloudmcdm {

/// Raw indicator values: one row per evaluation object, one column per leaf.
struct DataMatrix {
  std::vector<std::string> object_ids;
  std::vector<std::string> indicator_ids;
  Eigen::MatrixXd values;  // rows x columns, raw units
};

/// Direction-aware [0,1] values. Same shape and labels as the source data.
struct NormalizedMatrix {
  std::vector<std::string> object_ids;
  std::vector<std::string> indicator_ids;
  Eigen::MatrixXd values;

  Eigen::Index rows() const { return values.rows(); }
  Eigen::Index cols() const { return values.cols(); }
};

/// Column-wise min-max scaling. Benefit: (x-min)/(max-min); cost:
/// (max-x)/(max-min); a constant column becomes all 0.5.
/// Throws InputError on a non-finite cell or a direction count mismatch.
NormalizedMatrix min_max_normalize(const DataMatrix& d, std::span<const Direction> directions);

/// Reorders (and subsets) columns to `ids`. Throws InputError naming the
/// first id that has no column.
DataMatrix select_columns(const DataMatrix& d, const std::vector<std::string>& ids);
NormalizedMatrix select_columns(const NormalizedMatrix& z, const std::vector<std::string>& ids);

/// CSV with a header row of indicator ids and the object id in column 0.
DataMatrix parse_data_csv(std::string_view text, const std::string& source = "<data>");
DataMatrix load_data_csv(const std::string& path);

}  // namespace cloudmcdm
