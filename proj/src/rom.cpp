// SPDX-License-Identifier: Apache-2.0

#include "ommi/rom.hpp"

#include <cstdlib>
#include <stdexcept>
#include "ommi/parallel.hpp"

namespace ommi
{

std::string to_string(Projection p)
{
  return p == Projection::Galerkin ? "galerkin" : "petrov-galerkin";
}

Projection projection_from_string(const std::string &name)
{
  if (name == "galerkin")
  {
    return Projection::Galerkin;
  }
  if (name == "petrov-galerkin" || name == "pg")
  {
    return Projection::PetrovGalerkin;
  }
  throw std::invalid_argument("unknown projection '" + name + "'");
}

int thread_count()
{
  if (const char *env = std::getenv("OMMI_NUM_THREADS"))
  {
    const int n = std::atoi(env);
    if (n > 0)
    {
      return n;
    }
  }
  return 1;
}

}  // namespace ommi
