#include "qcheat/heisenberg_model.hpp"

#include <json.hpp>

#include <bit>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace qcheat {

namespace {

constexpr const char* kIndexOrder = "row-major; horizontal axes x1..x4n first, then vertical axes t1..t3";

std::uint64_t bswap(std::uint64_t v) {
    v = ((v & 0x00000000FFFFFFFFull) << 32) | ((v & 0xFFFFFFFF00000000ull) >> 32);
    v = ((v & 0x0000FFFF0000FFFFull) << 16) | ((v & 0xFFFF0000FFFF0000ull) >> 16);
    return ((v & 0x00FF00FF00FF00FFull) << 8) | ((v & 0xFF00FF00FF00FF00ull) >> 8);
}

}  // namespace

void write_snapshot(const ScalarField& f, const std::string& stem, double time) {
    const LatticeGrid& g = *f.grid;
    {
        std::ofstream bin(stem + ".bin", std::ios::binary);
        if (!bin) throw std::runtime_error("cannot open " + stem + ".bin for writing");
        if constexpr (std::endian::native == std::endian::little) {
            bin.write(reinterpret_cast<const char*>(f.data()), static_cast<std::streamsize>(f.size() * sizeof(double)));
        } else {
            for (double v : f.values) {
                std::uint64_t u;
                std::memcpy(&u, &v, sizeof u);
                u = bswap(u);
                bin.write(reinterpret_cast<const char*>(&u), sizeof u);
            }
        }
        if (!bin) throw std::runtime_error("write failed for " + stem + ".bin");
    }
    nlohmann::ordered_json h;
    h["format"] = "qcheat-field-1";
    h["n"] = g.n();
    h["m_x"] = g.m_x();
    h["m_t"] = g.m_t();
    h["h_x"] = g.h_x();
    h["h_t"] = g.h_t();
    h["L_t"] = g.L_t();
    h["time"] = time;
    h["count"] = f.size();
    h["dtype"] = "float64-le";
    h["index_order"] = kIndexOrder;
    std::ofstream js(stem + ".json");
    if (!js) throw std::runtime_error("cannot open " + stem + ".json for writing");
    js << h.dump(2) << "\n";
}

ScalarField read_snapshot(const std::string& stem) {
    std::ifstream js(stem + ".json");
    if (!js) throw std::runtime_error("cannot open " + stem + ".json");
    const auto h = nlohmann::json::parse(js);
    if (h.at("format") != "qcheat-field-1") throw std::runtime_error("unknown snapshot format");
    auto grid = make_grid(h.at("n").get<int>(), h.at("m_x").get<int>());
    std::vector<double> v(grid->size());
    if (h.at("count").get<std::size_t>() != v.size()) throw std::runtime_error("snapshot size mismatch");
    std::ifstream bin(stem + ".bin", std::ios::binary);
    if (!bin) throw std::runtime_error("cannot open " + stem + ".bin");
    bin.read(reinterpret_cast<char*>(v.data()), static_cast<std::streamsize>(v.size() * sizeof(double)));
    if (!bin) throw std::runtime_error("short read in " + stem + ".bin");
    if constexpr (std::endian::native != std::endian::little) {
        for (double& d : v) {
            std::uint64_t u;
            std::memcpy(&u, &d, sizeof u);
            u = bswap(u);
            std::memcpy(&d, &u, sizeof u);
        }
    }
    return ScalarField(grid, std::move(v));
}

}  // namespace qcheat
