#include "cloudmcdm/dataprep.hpp"

#include <cmath>
#include <set>
#include <unordered_map>

#include "cloudmcdm/error.hpp"
#include "csv.hpp"
#include "io_util.hpp"

namespace cloudmcdm {

NormalizedMatrix min_max_normalize(const DataMatrix& d, std::span<const Direction> directions) {
  if (static_cast<Eigen::Index>(directions.size()) != d.values.cols()) {
    throw InputError("normalize: " + std::to_string(directions.size()) + " directions for " +
                     std::to_string(d.values.cols()) + " columns");
  }
  NormalizedMatrix z{d.object_ids, d.indicator_ids, Eigen::MatrixXd(d.values.rows(), d.values.cols())};
  for (Eigen::Index j = 0; j < d.values.cols(); ++j) {
    const auto col = d.values.col(j);
    for (Eigen::Index i = 0; i < col.size(); ++i) {
      if (!std::isfinite(col(i))) {
        throw InputError("normalize: non-finite value at row " + std::to_string(i) + ", column '" +
                         (j < static_cast<Eigen::Index>(d.indicator_ids.size()) ? d.indicator_ids[j] : std::to_string(j)) + "'");
      }
    }
    const double lo = col.minCoeff();
    const double hi = col.maxCoeff();
    if (hi == lo) {
      z.values.col(j).setConstant(0.5);
      continue;
    }
    const double span = hi - lo;
    if (directions[j] == Direction::kBenefit) {
      z.values.col(j) = (col.array() - lo) / span;
    } else {
      z.values.col(j) = (hi - col.array()) / span;
    }
  }
  return z;
}

namespace {

template <typename M>
M select_impl(const M& m, const std::vector<std::string>& ids) {
  std::unordered_map<std::string, Eigen::Index> index;
  for (std::size_t j = 0; j < m.indicator_ids.size(); ++j) index.emplace(m.indicator_ids[j], static_cast<Eigen::Index>(j));
  M out{m.object_ids, ids, Eigen::MatrixXd(m.values.rows(), static_cast<Eigen::Index>(ids.size()))};
  for (std::size_t k = 0; k < ids.size(); ++k) {
    auto it = index.find(ids[k]);
    if (it == index.end()) throw InputError("data has no column for indicator '" + ids[k] + "'");
    out.values.col(static_cast<Eigen::Index>(k)) = m.values.col(it->second);
  }
  return out;
}

}  // namespace

DataMatrix select_columns(const DataMatrix& d, const std::vector<std::string>& ids) { return select_impl(d, ids); }
NormalizedMatrix select_columns(const NormalizedMatrix& z, const std::vector<std::string>& ids) { return select_impl(z, ids); }

DataMatrix parse_data_csv(std::string_view text, const std::string& source) {
  const auto rows = detail::parse_csv(text);
  if (rows.empty()) throw InputError(source + ": empty data file");
  const auto& header = rows.front().cells;
  if (header.size() < 2) throw InputError(source + ": header needs an object column and at least one indicator");

  DataMatrix d;
  d.indicator_ids.assign(header.begin() + 1, header.end());
  std::set<std::string> seen;
  for (const auto& id : d.indicator_ids) {
    if (id.empty()) throw InputError(source + ": empty indicator id in header");
    if (!seen.insert(id).second) throw InputError(source + ": duplicate column '" + id + "'");
  }

  const auto n = static_cast<Eigen::Index>(d.indicator_ids.size());
  d.values.resize(static_cast<Eigen::Index>(rows.size() - 1), n);
  for (std::size_t r = 1; r < rows.size(); ++r) {
    const auto& row = rows[r];
    if (static_cast<Eigen::Index>(row.cells.size()) != n + 1) {
      throw InputError(source + ":" + std::to_string(row.line) + ": expected " + std::to_string(n + 1) +
                       " cells, found " + std::to_string(row.cells.size()));
    }
    d.object_ids.push_back(row.cells[0]);
    for (Eigen::Index j = 0; j < n; ++j) {
      const auto& cell = row.cells[static_cast<std::size_t>(j) + 1];
      const auto v = detail::parse_double(cell);
      if (!v || !std::isfinite(*v)) {
        throw InputError(source + ":" + std::to_string(row.line) + ": column '" + d.indicator_ids[j] +
                         "': invalid number '" + cell + "'");
      }
      d.values(static_cast<Eigen::Index>(r - 1), j) = *v;
    }
  }
  if (d.object_ids.empty()) throw InputError(source + ": no data rows");
  return d;
}

DataMatrix load_data_csv(const std::string& path) { return parse_data_csv(detail::read_text_file(path), path); }

}  // namespace cloudmcdm
