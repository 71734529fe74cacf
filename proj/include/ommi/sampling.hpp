// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_SAMPLING_HPP
#define OMMI_SAMPLING_HPP

#include <cstdint>
#include <string>
#include <vector>
#include "ommi/config.hpp"

namespace ommi
{

enum class Sampler
{
  Uniform,
  LatinHypercube,
  Grid,
};

std::string to_string(Sampler s);
Sampler sampler_from_string(const std::string &name);

struct SampleSet
{
  std::vector<Parameter> points;
  Sampler sampler = Sampler::Uniform;
  std::uint64_t seed = 0;
};

// Reproducible from (sampler, count, seed, ranges). Grid requires a square count.
SampleSet sample_parameters(Sampler sampler, std::size_t count, std::uint64_t seed,
                            const Interval &theta1, const Interval &theta2);

}  // namespace ommi

#endif  // OMMI_SAMPLING_HPP
