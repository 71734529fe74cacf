// SPDX-License-Identifier: Apache-2.0

#ifndef OMMI_FIELD_IO_HPP
#define OMMI_FIELD_IO_HPP

#include <iosfwd>
#include <string>
#include <Eigen/Dense>
#include "ommi/mesh.hpp"

namespace ommi
{

//
// Field file: a text header terminated by a line "end", followed by the values as raw
// little-endian float64 in group-cell-local order.
//
//   OMMI-FIELD 1
//   nx 21
//   ny 21
//   n_groups 2
//   n_local 4
//   cell_width 0.33333333333333331
//   cell_height 0.33333333333333331
//   ordering group-cell-local
//   count 3528
//   end
//
struct FieldHeader
{
  int nx = 0;
  int ny = 0;
  int n_groups = 0;
  int n_local = 4;
  double cell_width = 0.0;
  double cell_height = 0.0;

  std::size_t count() const
  {
    return static_cast<std::size_t>(nx) * ny * n_groups * n_local;
  }
  bool operator==(const FieldHeader &) const = default;
};

FieldHeader field_header(const Mesh &mesh, int n_groups);

void write_field(std::ostream &out, const FieldHeader &header, const Eigen::VectorXd &values);
void write_field(const std::string &path, const FieldHeader &header,
                 const Eigen::VectorXd &values);

struct FieldFile
{
  FieldHeader header;
  Eigen::VectorXd values;
};

FieldFile read_field(std::istream &in);
FieldFile read_field(const std::string &path);

// Plain CSV: group,ix,iy,local,x,y,value with (x, y) the node position.
void write_field_csv(std::ostream &out, const FieldHeader &header,
                     const Eigen::VectorXd &values);

}  // namespace ommi

#endif  // OMMI_FIELD_IO_HPP
