// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_HARNESS_HPP
#define OMMI_HARNESS_HPP

#include <algorithm>
#include <chrono>
#include <iosfwd>
#include <string>
#include <vector>
#include <Eigen/Dense>
#include "ommi/config.hpp"
#include "ommi/library.hpp"

namespace ommi
{

// ‖approx − reference‖₂ / ‖reference‖₂ over the whole field; 0 when both vanish.
double relative_l2_error(const Eigen::VectorXd &approx, const Eigen::VectorXd &reference);

// |approx − reference| / max(|reference|, 1e-12 ‖reference‖∞), per entry.
Eigen::VectorXd pointwise_relative_error(const Eigen::VectorXd &approx,
                                         const Eigen::VectorXd &reference);

// Median wall time of `reps` calls to fn(), in seconds.
template <typename Fn>
double median_seconds(int reps, Fn &&fn)
{
  std::vector<double> t;
  t.reserve(reps);
  for (int i = 0; i < std::max(reps, 1); i++)
  {
    const auto start = std::chrono::steady_clock::now();
    fn();
    t.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
  }
  std::nth_element(t.begin(), t.begin() + t.size() / 2, t.end());
  return t[t.size() / 2];
}

struct EvalPoint
{
  int index = 0;
  Parameter theta{};
  double rel_l2_error = 0.0;
  double fom_time_s = 0.0;
  double rom_time_s = 0.0;
  double speedup = 0.0;
  std::size_t fom_sweeps = 0;
  std::size_t rom_sweeps = 0;
};

struct EvalReport
{
  std::vector<EvalPoint> points;
  double mean_error = 0.0;
  double max_error = 0.0;
  double mean_speedup = 0.0;
  double mean_fom_time_s = 0.0;
  double mean_rom_time_s = 0.0;
  std::string environment;
};

struct EvalOptions
{
  int repetitions = 3;
  std::string field_dir;  // per-point FOM/ROM/error field files when non-empty
  bool csv_fields = false;
};

// Ground-truth FOM and OMMI online path (interpolate, reduced solve, reconstruct) per test
// point. Timings exclude operator setup and library load.
EvalReport evaluate(const ProblemConfig &config, const RomLibrary &library,
                    const std::vector<Parameter> &test, const EvalOptions &options = {},
                    std::ostream *log = nullptr);

inline constexpr const char *kEvalCsvHeader =
    "point_index,theta1,theta2,rel_l2_error,fom_time_s,rom_time_s,speedup,fom_sweeps,"
    "rom_sweeps";

// One row per point followed by an aggregate row whose point_index is "mean".
void write_eval_csv(std::ostream &out, const EvalReport &report);
std::vector<EvalPoint> read_eval_csv(std::istream &in);

struct CompareReport
{
  Parameter theta{};
  double fom_time_s = 0.0;
  double mi_time_s = 0.0;    // online assembly (r + 1 sweeps) plus reduced solve
  double ommi_time_s = 0.0;  // interpolation plus reduced solve
  std::size_t fom_sweeps = 0;
  std::size_t mi_sweeps = 0;
  std::size_t ommi_sweeps = 0;
  double fom_self_error = 0.0;
  double mi_error = 0.0;
  double ommi_error = 0.0;
};

CompareReport compare(const ProblemConfig &config, const RomLibrary &library,
                      const Parameter &theta, int repetitions = 3);

std::string environment_fingerprint();

}  // namespace ommi

#endif  // OMMI_HARNESS_HPP
