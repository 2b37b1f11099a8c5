#include "checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <stdexcept>

namespace bo::solver {

namespace {
constexpr char magic[8] = {'B', 'O', 'T', 'R', 'A', 'J', 'v', '1'};
constexpr std::uint32_t endian_tag = 0x01020304u;

template <class T>
void put(std::ofstream& f, const T& v)
{
    f.write(reinterpret_cast<const char*>(&v), sizeof(T));
}

template <class T>
T take(std::ifstream& f)
{
    T v{};
    f.read(reinterpret_cast<char*>(&v), sizeof(T));
    if (!f)
        throw std::runtime_error("truncated trajectory file");
    return v;
}
} // namespace

void save_trajectory(const std::string& path, const Trajectory& t)
{
    if (t.times.size() != t.frames.size())
        throw std::invalid_argument("times/frames size mismatch");
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw std::runtime_error("cannot open " + path + " for writing");
    f.write(magic, sizeof(magic));
    put(f, endian_tag);
    put(f, static_cast<std::uint64_t>(t.g.n));
    put(f, t.g.length);
    put(f, static_cast<std::uint64_t>(t.frames.size()));
    f.write(reinterpret_cast<const char*>(t.times.data()),
            static_cast<std::streamsize>(t.times.size() * sizeof(double)));
    for (const auto& fr : t.frames) {
        if (fr.size() != t.g.n)
            throw std::invalid_argument("frame size mismatch");
        f.write(reinterpret_cast<const char*>(fr.data()),
                static_cast<std::streamsize>(fr.size() * sizeof(double)));
    }
    if (!f)
        throw std::runtime_error("write failed: " + path);
}

Trajectory load_trajectory(const std::string& path)
{
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw std::runtime_error("cannot open " + path);
    char m[8];
    f.read(m, sizeof(m));
    if (!f || std::memcmp(m, magic, sizeof(magic)) != 0)
        throw std::runtime_error("not a trajectory file: " + path);
    if (take<std::uint32_t>(f) != endian_tag)
        throw std::runtime_error("endianness mismatch in " + path);
    const auto n = take<std::uint64_t>(f);
    const double length = take<double>(f);
    const auto frames = take<std::uint64_t>(f);

    Trajectory t;
    t.g = Grid(static_cast<std::size_t>(n), length);
    t.times.resize(frames);
    f.read(reinterpret_cast<char*>(t.times.data()),
           static_cast<std::streamsize>(frames * sizeof(double)));
    t.frames.assign(frames, std::vector<double>(n));
    for (auto& fr : t.frames)
        f.read(reinterpret_cast<char*>(fr.data()),
               static_cast<std::streamsize>(n * sizeof(double)));
    if (!f)
        throw std::runtime_error("truncated trajectory file: " + path);
    return t;
}

Trajectory subsample(const Trajectory& t, std::size_t stride)
{
    if (stride == 0)
        throw std::invalid_argument("subsample: stride must be positive");
    Trajectory out;
    out.g = t.g;
    for (std::size_t i = 0; i < t.frames.size(); i += stride) {
        out.times.push_back(t.times[i]);
        out.frames.push_back(t.frames[i]);
    }
    return out;
}

} // namespace bo::solver
