#ifndef SFCLUST_CSV_IO_HPP
#define SFCLUST_CSV_IO_HPP

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "sfclust/types.hpp"

/**
 * @file csv_io.hpp
 *
 * @brief Plain CSV ingestion and emission.
 *
 * Comma separated, '.' decimal point. A first row whose first token is not
 * numeric is treated as a header. Numbers are written with 17 significant
 * digits so that a write followed by a read is exact.
 */

namespace sfclust {

/// Raw table: optional header plus string cells.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

CsvTable read_csv(const std::filesystem::path& path);

struct MvInput {
    Dataset data;
    /// Truth labels when a truth column was requested.
    std::optional<Partition> truth;
};

/// Reads an N x p numeric table. `truth_col` is a header name or a 1-based
/// column index; that column is excluded from the features.
MvInput read_mv_csv(const std::filesystem::path& path, const std::string& truth_col = {});

/// One label per line (any tokens; optional header). Distinct labels are
/// coded in order of first appearance.
Partition read_labels(const std::filesystem::path& path);

/// Row 1 holds the grid abscissae, every further row one curve.
FunctionalDataset read_fd_csv(const std::filesystem::path& path);

std::string format_double(double v);

void write_mv_csv(const std::filesystem::path& path, const Dataset& data,
                  const Partition* truth = nullptr);
void write_fd_csv(const std::filesystem::path& path, const FunctionalDataset& data);
/// One 1-based label per line.
void write_labels(const std::filesystem::path& path, const Partition& part);
/// One weight per line.
void write_weights(const std::filesystem::path& path, const Eigen::VectorXd& w);
/// Header "x,w" then one grid point per line.
void write_weight_function(const std::filesystem::path& path, const Eigen::VectorXd& grid,
                           const Eigen::VectorXd& w);
void write_text(const std::filesystem::path& path, const std::string& text);

}  // namespace sfclust

#endif
