// SPDX-License-Identifier: Apache-2.0

#include "ommi/sampling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>

namespace ommi
{

std::string to_string(Sampler s)
{
  switch (s)
  {
    case Sampler::Uniform:
      return "uniform";
    case Sampler::LatinHypercube:
      return "lhs";
    case Sampler::Grid:
      return "grid";
  }
  return "uniform";
}

Sampler sampler_from_string(const std::string &name)
{
  if (name == "uniform")
  {
    return Sampler::Uniform;
  }
  if (name == "lhs" || name == "latin-hypercube")
  {
    return Sampler::LatinHypercube;
  }
  if (name == "grid")
  {
    return Sampler::Grid;
  }
  throw std::invalid_argument("unknown sampler '" + name + "'");
}

SampleSet sample_parameters(Sampler sampler, std::size_t count, std::uint64_t seed,
                            const Interval &theta1, const Interval &theta2)
{
  SampleSet set;
  set.sampler = sampler;
  set.seed = seed;
  if (count == 0)
  {
    return set;
  }
  std::mt19937_64 rng(seed);
  // Explicit 53-bit mapping keeps draws identical across standard libraries.
  const auto unit = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  const auto at = [](const Interval &iv, double u) { return iv.lo + u * iv.width(); };

  switch (sampler)
  {
    case Sampler::Uniform:
      for (std::size_t i = 0; i < count; i++)
      {
        const double u1 = unit();
        const double u2 = unit();
        set.points.push_back({at(theta1, u1), at(theta2, u2)});
      }
      break;
    case Sampler::LatinHypercube:
    {
      std::vector<std::size_t> p1(count), p2(count);
      std::iota(p1.begin(), p1.end(), 0);
      std::iota(p2.begin(), p2.end(), 0);
      // Fisher-Yates with the same portable draws.
      const auto shuffle = [&](std::vector<std::size_t> &p)
      {
        for (std::size_t i = count - 1; i > 0; i--)
        {
          const auto j = static_cast<std::size_t>(unit() * (i + 1));
          std::swap(p[i], p[std::min(j, i)]);
        }
      };
      shuffle(p1);
      shuffle(p2);
      for (std::size_t i = 0; i < count; i++)
      {
        const double u1 = (p1[i] + unit()) / count;
        const double u2 = (p2[i] + unit()) / count;
        set.points.push_back({at(theta1, u1), at(theta2, u2)});
      }
      break;
    }
    case Sampler::Grid:
    {
      const auto k = static_cast<std::size_t>(std::llround(std::sqrt(double(count))));
      if (k * k != count)
      {
        throw std::invalid_argument("grid sampler needs a square point count");
      }
      for (std::size_t j = 0; j < k; j++)
      {
        for (std::size_t i = 0; i < k; i++)
        {
          const double u1 = k == 1 ? 0.5 : double(i) / (k - 1);
          const double u2 = k == 1 ? 0.5 : double(j) / (k - 1);
          set.points.push_back({at(theta1, u1), at(theta2, u2)});
        }
      }
      break;
    }
  }
  return set;
}

}  // namespace ommi
