#include "levyswarm/csv.hpp"

#include <charconv>

#include "levyswarm/errors.hpp"

namespace levyswarm {

std::string format_double(double v) {
    char buf[40];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(const std::string& path, const std::vector<std::string>& header)
    : out_(path, std::ios::binary), path_(path), columns_(header.size()) {
    if (!out_) throw ValidationError("cannot open '" + path + "' for writing");
    if (header.empty()) throw ValidationError("csv needs at least one column");
    emit(header);
}

void CsvWriter::emit(const std::vector<std::string>& cells) {
    if (cells.size() != columns_)
        throw ValidationError("csv row width " + std::to_string(cells.size()) +
                              " does not match the header of '" + path_ + "'");
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ',';
        out_ << cells[i];
    }
    out_ << '\n';
    if (!out_) throw SolverError("write failed on '" + path_ + "'");
}

void CsvWriter::row(const std::vector<double>& values) {
    std::vector<std::string> cells(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) cells[i] = format_double(values[i]);
    emit(cells);
}

void CsvWriter::row(const std::vector<std::string>& cells) { emit(cells); }

void CsvWriter::close() {
    if (out_.is_open()) {
        out_.flush();
        if (!out_) throw SolverError("write failed on '" + path_ + "'");
        out_.close();
    }
}

void write_scalar_field_csv(const std::string& path, const ScalarField2D& u) {
    CsvWriter csv(path, {"x", "y", "u"});
    const Grid2D& g = u.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i)
            csv.row({g.x_center(i), g.y_center(j), u.at(i, j)});
    csv.close();
}

void write_direction_field_csv(const std::string& path, const ScalarField2D& u,
                               const VectorField2D& lambda) {
    if (!lambda.grid.same_shape(u.grid))
        throw ValidationError("direction field grid does not match the density grid");
    CsvWriter csv(path, {"x", "y", "u", "lx", "ly"});
    const Grid2D& g = u.grid;
    for (int j = 0; j < g.ny; ++j)
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t k = static_cast<std::size_t>(j) * g.nx + i;
            csv.row({g.x_center(i), g.y_center(j), u.v[k], lambda.x[k], lambda.y[k]});
        }
    csv.close();
}

}  // namespace levyswarm
