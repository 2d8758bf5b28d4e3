// SPDX-License-Identifier: Apache-2.0
#include "spatialcs/serialization.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <vector>

namespace spatialcs {

namespace {

std::string fmt(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::vector<std::string> split_line(const std::string& line)
{
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ','))
        out.push_back(cell);
    return out;
}

std::vector<std::string> next_row(std::istream& is, const char* what)
{
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (!line.empty())
            return split_line(line);
    }
    throw IoError(std::string("unexpected end of input while reading ") + what);
}

double to_double(const std::string& s)
{
    double v = 0.0;
    const char* first = s.data();
    if (!s.empty() && s.front() == '+')
        ++first;
    const auto [end, ec] = std::from_chars(first, s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size() || s.empty())
        throw IoError("malformed number '" + s + "'");
    return v;
}

long to_count(const std::string& s)
{
    const double v = to_double(s);
    if (v < 0 || v != static_cast<double>(static_cast<long>(v)))
        throw IoError("malformed count '" + s + "'");
    return static_cast<long>(v);
}

std::vector<std::string> header(std::istream& is, const std::string& tag, std::size_t fields)
{
    auto h = next_row(is, tag.c_str());
    if (h.empty() || h[0] != tag || h.size() != fields + 1)
        throw IoError("expected header '" + tag + "' with " + std::to_string(fields) + " dimensions");
    return h;
}

}  // namespace

void write_complex_matrix(std::ostream& os, const CMatrix& m)
{
    os << "complex_matrix," << m.rows() << ',' << m.cols() << '\n';
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c)
            os << (c ? "," : "") << fmt(m(r, c).real()) << ',' << fmt(m(r, c).imag());
        os << '\n';
    }
}

CMatrix read_complex_matrix(std::istream& is)
{
    const auto h = header(is, "complex_matrix", 2);
    const long rows = to_count(h[1]);
    const long cols = to_count(h[2]);
    CMatrix m(rows, cols);
    for (long r = 0; r < rows; ++r) {
        const auto cells = next_row(is, "complex_matrix row");
        if (static_cast<long>(cells.size()) != 2 * cols)
            throw IoError("complex_matrix row " + std::to_string(r) + " has wrong length");
        for (long c = 0; c < cols; ++c)
            m(r, c) = cplx(to_double(cells[static_cast<std::size_t>(2 * c)]),
                           to_double(cells[static_cast<std::size_t>(2 * c + 1)]));
    }
    return m;
}

void write_scene(std::ostream& os, const Scene& scene)
{
    os << "scene," << scene.G << ',' << scene.K() << ',' << scene.P() << '\n';
    for (int k = 0; k < scene.K(); ++k) {
        os << scene.support[static_cast<std::size_t>(k)];
        for (int p = 0; p < scene.P(); ++p)
            os << ',' << fmt(scene.gains(k, p).real()) << ',' << fmt(scene.gains(k, p).imag());
        os << '\n';
    }
}

Scene read_scene(std::istream& is)
{
    const auto h = header(is, "scene", 3);
    Scene s;
    s.G = static_cast<int>(to_count(h[1]));
    const long K = to_count(h[2]);
    const long P = to_count(h[3]);
    s.gains.resize(K, P);
    for (long k = 0; k < K; ++k) {
        const auto cells = next_row(is, "scene row");
        if (static_cast<long>(cells.size()) != 1 + 2 * P)
            throw IoError("scene row has wrong length");
        const long idx = to_count(cells[0]);
        if (idx >= s.G)
            throw IoError("scene support index out of range");
        s.support.push_back(static_cast<int>(idx));
        for (long p = 0; p < P; ++p)
            s.gains(k, p) = cplx(to_double(cells[static_cast<std::size_t>(1 + 2 * p)]),
                                 to_double(cells[static_cast<std::size_t>(2 + 2 * p)]));
    }
    return s;
}

void write_positions(std::ostream& os, const ElementPositions& pos)
{
    os << "positions," << pos.M() << ',' << pos.N() << '\n';
    for (int m = 0; m < pos.M(); ++m)
        os << (m ? "," : "") << fmt(pos.xi[static_cast<std::size_t>(m)]);
    os << '\n';
    for (int n = 0; n < pos.N(); ++n)
        os << (n ? "," : "") << fmt(pos.zeta[static_cast<std::size_t>(n)]);
    os << '\n';
}

ElementPositions read_positions(std::istream& is)
{
    const auto h = header(is, "positions", 2);
    const auto M = static_cast<std::size_t>(to_count(h[1]));
    const auto N = static_cast<std::size_t>(to_count(h[2]));
    ElementPositions pos;
    const auto xi = next_row(is, "transmit positions");
    const auto zeta = next_row(is, "receive positions");
    if (xi.size() != M || zeta.size() != N)
        throw IoError("position rows have wrong length");
    for (const auto& c : xi)
        pos.xi.push_back(to_double(c));
    for (const auto& c : zeta)
        pos.zeta.push_back(to_double(c));
    return pos;
}

void save_complex_matrix(const std::string& path, const CMatrix& m)
{
    std::ofstream os(path);
    if (!os)
        throw IoError("cannot open '" + path + "' for writing");
    write_complex_matrix(os, m);
    if (!os)
        throw IoError("write to '" + path + "' failed");
}

CMatrix load_complex_matrix(const std::string& path)
{
    std::ifstream is(path);
    if (!is)
        throw IoError("cannot open '" + path + "' for reading");
    return read_complex_matrix(is);
}

}  // namespace spatialcs
