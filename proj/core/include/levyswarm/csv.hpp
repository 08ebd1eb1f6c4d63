#pragma once

#include <fstream>
#include <string>
#include <vector>

#include "levyswarm/grid.hpp"

namespace levyswarm {

// Shortest decimal form that parses back to the same double; always '.' as
// the decimal mark, independent of locale.
std::string format_double(double v);

// Comma-separated output with a header row, LF line endings, no quoting (cell
// text must not contain commas or newlines).
class CsvWriter {
  public:
    CsvWriter(const std::string& path, const std::vector<std::string>& header);
    void row(const std::vector<double>& values);
    void row(const std::vector<std::string>& cells);
    void close();

  private:
    std::ofstream out_;
    std::string path_;
    std::size_t columns_;

    void emit(const std::vector<std::string>& cells);
};

// One line per cell, y-major: x,y,u
void write_scalar_field_csv(const std::string& path, const ScalarField2D& u);

// One line per cell: x,y,u,lx,ly
void write_direction_field_csv(const std::string& path, const ScalarField2D& u,
                               const VectorField2D& lambda);

}  // namespace levyswarm
