#include "gcw/matrix_io.hpp"

#include <array>
#include <bit>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "gcw/errors.hpp"

namespace fs = std::filesystem;

namespace gcw {

namespace {

constexpr std::array<char, 4> kMagic = {'G', 'D', 'M', '1'};

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

void put_u64(std::ostream& out, std::uint64_t v) {
    std::array<char, 8> b;
    for (int i = 0; i < 8; ++i)
        b[static_cast<std::size_t>(i)] = static_cast<char>((v >> (8 * i)) & 0xFF);
    out.write(b.data(), 8);
}

std::uint64_t get_u64(const char* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = (v << 8) | static_cast<unsigned char>(p[i]);
    return v;
}

DistanceMatrix make_checked(std::size_t n, DistanceKind kind, std::vector<double> values,
                            const fs::path& path) {
    try {
        return DistanceMatrix(n, kind, std::move(values));
    } catch (const std::invalid_argument& e) {
        throw DataError("malformed distance matrix " + path.string() + ": " + e.what());
    }
}

}  // namespace

void write_gdm(const fs::path& path, const DistanceMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw DataError("cannot write " + path.string());
    out.write(kMagic.data(), kMagic.size());
    put_u64(out, m.n());
    out.put(static_cast<char>(m.kind()));
    for (double v : m.values())
        put_u64(out, std::bit_cast<std::uint64_t>(v));
    if (!out)
        throw DataError("write failed: " + path.string());
}

DistanceMatrix read_gdm(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot read " + path.string());
    std::vector<char> bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (bytes.size() < 13 || std::memcmp(bytes.data(), kMagic.data(), kMagic.size()) != 0)
        throw DataError("not a GDM1 matrix: " + path.string());
    const std::uint64_t n = get_u64(bytes.data() + 4);
    const auto tag = static_cast<unsigned char>(bytes[12]);
    if (tag > static_cast<unsigned char>(DistanceKind::GcwSsim))
        throw DataError("unknown matrix kind tag " + std::to_string(tag) + " in " + path.string());
    if (n > (1ULL << 20) || bytes.size() != 13 + n * n * 8)
        throw DataError("GDM1 size mismatch in " + path.string());

    std::vector<double> values(n * n);
    for (std::size_t i = 0; i < values.size(); ++i)
        values[i] = std::bit_cast<double>(get_u64(bytes.data() + 13 + 8 * i));
    return make_checked(n, static_cast<DistanceKind>(tag), std::move(values), path);
}

void write_matrix_text(const fs::path& path, const DistanceMatrix& m, const std::string& comment) {
    std::ofstream out(path);
    if (!out)
        throw DataError("cannot write " + path.string());
    std::istringstream lines(comment);
    for (std::string line; std::getline(lines, line);)
        out << "# " << line << '\n';
    out << "# kind=" << to_string(m.kind()) << '\n';
    std::array<char, 32> buf;
    for (std::size_t i = 0; i < m.n(); ++i) {
        for (std::size_t j = 0; j < m.n(); ++j) {
            // Shortest representation that round-trips exactly.
            auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), m(i, j));
            if (j)
                out << ',';
            out.write(buf.data(), end - buf.data());
        }
        out << '\n';
    }
    if (!out)
        throw DataError("write failed: " + path.string());
}

DistanceMatrix read_matrix_text(const fs::path& path) {
    std::ifstream in(path);
    if (!in)
        throw DataError("cannot read " + path.string());
    DistanceKind kind = DistanceKind::L2;
    std::vector<double> values;
    std::size_t cols = 0, rows = 0;
    for (std::string line; std::getline(in, line);) {
        if (!line.empty() && line.back() == '\r')
            line.pop_back();
        if (line.empty())
            continue;
        if (line.front() == '#') {
            const auto pos = line.find("kind=");
            if (pos != std::string::npos) {
                try {
                    kind = distance_kind_from_string(line.substr(pos + 5));
                } catch (const std::invalid_argument& e) {
                    throw DataError(path.string() + ": " + e.what());
                }
            }
            continue;
        }
        std::size_t count = 0;
        const char* p = line.data();
        const char* end = line.data() + line.size();
        while (true) {
            while (p < end && *p == ' ') ++p;
            double v;
            auto [next, ec] = std::from_chars(p, end, v);
            if (ec != std::errc{})
                throw DataError(path.string() + ": bad number in row " + std::to_string(rows + 1));
            values.push_back(v);
            ++count;
            p = next;
            while (p < end && *p == ' ') ++p;
            if (p == end)
                break;
            if (*p != ',')
                throw DataError(path.string() + ": expected ',' in row " + std::to_string(rows + 1));
            ++p;
        }
        if (rows == 0)
            cols = count;
        else if (count != cols)
            throw DataError(path.string() + ": ragged row " + std::to_string(rows + 1));
        ++rows;
    }
    if (rows != cols)
        throw DataError(path.string() + ": matrix is not square");
    return make_checked(rows, kind, std::move(values), path);
}

DistanceMatrix read_matrix(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw DataError("cannot read " + path.string());
    std::array<char, 4> head{};
    in.read(head.data(), head.size());
    if (in.gcount() == 4 && head == kMagic)
        return read_gdm(path);
    return read_matrix_text(path);
}

}  // namespace gcw
