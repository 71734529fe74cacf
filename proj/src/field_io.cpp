// SPDX-License-Identifier: Apache-2.0

#include "ommi/field_io.hpp"

#include <bit>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include "ommi/dg.hpp"

namespace ommi
{

static_assert(std::endian::native == std::endian::little);

FieldHeader field_header(const Mesh &mesh, int n_groups)
{
  return {mesh.nx(), mesh.ny(), n_groups, kLocalDofs, mesh.cell_width(), mesh.cell_height()};
}

void write_field(std::ostream &out, const FieldHeader &h, const Eigen::VectorXd &values)
{
  if (values.size() != static_cast<Eigen::Index>(h.count()))
  {
    throw std::invalid_argument("write_field: value count does not match header");
  }
  std::ostringstream head;
  head << std::setprecision(std::numeric_limits<double>::max_digits10);
  head << "OMMI-FIELD 1\n"
       << "nx " << h.nx << "\n"
       << "ny " << h.ny << "\n"
       << "n_groups " << h.n_groups << "\n"
       << "n_local " << h.n_local << "\n"
       << "cell_width " << h.cell_width << "\n"
       << "cell_height " << h.cell_height << "\n"
       << "ordering group-cell-local\n"
       << "count " << h.count() << "\n"
       << "end\n";
  out << head.str();
  out.write(reinterpret_cast<const char *>(values.data()),
            static_cast<std::streamsize>(values.size() * sizeof(double)));
  if (!out)
  {
    throw std::runtime_error("write_field: write failed");
  }
}

void write_field(const std::string &path, const FieldHeader &header,
                 const Eigen::VectorXd &values)
{
  std::ofstream out(path, std::ios::binary);
  if (!out)
  {
    throw std::runtime_error("cannot open '" + path + "' for writing");
  }
  write_field(out, header, values);
}

FieldFile read_field(std::istream &in)
{
  std::string line;
  if (!std::getline(in, line) || line != "OMMI-FIELD 1")
  {
    throw std::runtime_error("field file: bad header magic");
  }
  FieldFile f;
  std::size_t count = 0;
  bool have_count = false;
  while (std::getline(in, line) && line != "end")
  {
    std::istringstream ls(line);
    std::string key;
    ls >> key;
    if (key == "nx")
      ls >> f.header.nx;
    else if (key == "ny")
      ls >> f.header.ny;
    else if (key == "n_groups")
      ls >> f.header.n_groups;
    else if (key == "n_local")
      ls >> f.header.n_local;
    else if (key == "cell_width")
      ls >> f.header.cell_width;
    else if (key == "cell_height")
      ls >> f.header.cell_height;
    else if (key == "count")
    {
      ls >> count;
      have_count = true;
    }
    else if (key == "ordering")
    {
      std::string tag;
      ls >> tag;
      if (tag != "group-cell-local")
      {
        throw std::runtime_error("field file: unsupported ordering '" + tag + "'");
      }
      continue;
    }
    else
    {
      continue;
    }
    if (!ls)
    {
      throw std::runtime_error("field file: malformed header line '" + line + "'");
    }
  }
  if (line != "end")
  {
    throw std::runtime_error("field file: header not terminated");
  }
  if (f.header.nx < 1 || f.header.ny < 1 || f.header.n_groups < 1 || f.header.n_local < 1 ||
      !have_count || count != f.header.count())
  {
    throw std::runtime_error("field file: inconsistent dimensions");
  }
  f.values.resize(static_cast<Eigen::Index>(count));
  in.read(reinterpret_cast<char *>(f.values.data()),
          static_cast<std::streamsize>(count * sizeof(double)));
  if (!in)
  {
    throw std::runtime_error("field file: truncated data");
  }
  return f;
}

FieldFile read_field(const std::string &path)
{
  std::ifstream in(path, std::ios::binary);
  if (!in)
  {
    throw std::runtime_error("cannot open '" + path + "'");
  }
  return read_field(in);
}

void write_field_csv(std::ostream &out, const FieldHeader &h, const Eigen::VectorXd &values)
{
  if (values.size() != static_cast<Eigen::Index>(h.count()))
  {
    throw std::invalid_argument("write_field_csv: value count does not match header");
  }
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  out << "group,ix,iy,local,x,y,value\n";
  Eigen::Index idx = 0;
  for (int g = 0; g < h.n_groups; g++)
  {
    for (int iy = 0; iy < h.ny; iy++)
    {
      for (int ix = 0; ix < h.nx; ix++)
      {
        for (int k = 0; k < h.n_local; k++, idx++)
        {
          const double x = (ix + local_ix(k)) * h.cell_width;
          const double y = (iy + local_iy(k)) * h.cell_height;
          out << g << ',' << ix << ',' << iy << ',' << k << ',' << x << ',' << y << ','
              << values(idx) << '\n';
        }
      }
    }
  }
}

}  // namespace ommi
