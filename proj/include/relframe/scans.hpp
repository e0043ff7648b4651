#pragma once

#include <array>
#include <optional>
#include <vector>

#include <Eigen/Dense>

#include "relframe/infogain.hpp"

namespace relframe {

struct ScanGrid {
  Param param;
  double lo;
  double hi;
  int n;

  // Full encoding range of `p` with n nodes.
  static ScanGrid over(Param p, int n);
  void validate() const;
  std::vector<double> nodes() const;
};

struct ScanResult {
  Param varied;
  std::vector<double> axis;
  std::vector<double> avg_gain;
  EncodingScheme scheme;
  PriorModel prior;
  QuadratureConfig quad;
};

struct ScanResult2D {
  ScanGrid grid_a;
  ScanGrid grid_b;
  std::vector<double> a_values;
  std::vector<double> b_values;
  Eigen::MatrixXd avg_gain;  // rows follow grid_a, columns grid_b
  EncodingScheme scheme;
  PriorModel prior;
  QuadratureConfig quad;
};

struct OptimalSetting {
  std::array<Param, 2> params;
  std::array<double, 2> values;
  double avg_gain;
};

inline constexpr int kDefaultScanNodes = 64;

// |d p(singlet | alpha, theta, psi) / d wrt|, differentiated analytically.
double sensitivity(const RelativeParams& p, Param wrt);

// Mean of sensitivity() with respect to the message parameter over `n`
// nodes of its encoding range.
double mean_sensitivity(const EncodingScheme& scheme, int n = 257);

// Grid argmax of mean_sensitivity over the two fixed parameters.
OptimalSetting sensitivity_optimum(Param message, int resolution = kDefaultScanNodes);

ScanResult scan1d(const EncodingScheme& scheme, const ScanGrid& vary, const PriorModel& prior,
                  const QuadratureConfig& quad = {});

ScanResult2D scan2d(const EncodingScheme& scheme, const ScanGrid& grid_a, const ScanGrid& grid_b,
                    const PriorModel& prior, const QuadratureConfig& quad = {});

// Exhaustive grid over both fixed parameters (ties go to smaller values),
// then a golden-section pass along each axis around the best node.
OptimalSetting optimize_setting(Param message, const PriorModel& prior,
                                const QuadratureConfig& quad = {},
                                int resolution = kDefaultScanNodes);

enum class PriorKind { Uniform, Discrete };

struct TableOneCell {
  Param message;
  PriorKind prior;
  OptimalSetting best;
  // Alpha encoding only: the gain with psi0 reflected to pi - psi0.
  std::optional<double> reflected_psi_gain;
};

struct TableOneReport {
  // [prior][encoding] with encodings ordered theta, psi, alpha.
  std::array<std::array<TableOneCell, 3>, 2> cells;
  const TableOneCell& at(PriorKind prior, Param message) const;
};

TableOneReport table_one(const QuadratureConfig& quad = {}, int resolution = kDefaultScanNodes);

}  // namespace relframe
