// SPDX-License-Identifier: Apache-2.0

#include "ommi/mesh.hpp"

#include <string>
#include "ommi/errors.hpp"

namespace ommi
{

Mesh::Mesh(int nx, int ny, double cell_width, double cell_height, std::vector<int> material,
           int n_materials)
  : nx_(nx), ny_(ny), cell_width_(cell_width), cell_height_(cell_height),
    material_(std::move(material)), n_materials_(n_materials)
{
  if (nx < 1 || ny < 1)
  {
    throw ConfigError("mesh", "cell counts must be at least 1");
  }
  if (!(cell_width > 0.0) || !(cell_height > 0.0))
  {
    throw ConfigError("mesh", "cell dimensions must be positive");
  }
  if (material_.size() != static_cast<std::size_t>(nx) * ny)
  {
    throw ConfigError("mesh", "material map has " + std::to_string(material_.size()) +
                                  " entries, expected " + std::to_string(nx * ny));
  }
  for (int m : material_)
  {
    if (m < 0 || m >= n_materials)
    {
      throw ConfigError("layout", "material index " + std::to_string(m) +
                                      " is not in the material table");
    }
  }
}

}  // namespace ommi
