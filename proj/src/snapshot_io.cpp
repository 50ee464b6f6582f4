#include "abraham/snapshot_io.hpp"

#include <cinttypes>
#include <cstdio>
#include <cstring>
#include <fstream>

#include "abraham/errors.hpp"

namespace abraham {
namespace {

constexpr char kFieldMagic[8] = {'A', 'B', 'R', 'F', 'L', 'D', '0', '1'};
constexpr char kTrajMagic[8] = {'A', 'B', 'R', 'T', 'R', 'J', '0', '1'};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

const char* component_names[6] = {"Ex", "Ey", "Ez", "Bx", "By", "Bz"};

void write_doubles(std::ofstream& os, const double* p, std::size_t count) {
    os.write(reinterpret_cast<const char*>(p), static_cast<std::streamsize>(count * sizeof(double)));
}

void read_doubles(std::ifstream& is, double* p, std::size_t count) {
    is.read(reinterpret_cast<char*>(p), static_cast<std::streamsize>(count * sizeof(double)));
    if (!is) throw IoError("unexpected end of file while reading field data");
}

}  // namespace

void write_scalar_field(const std::string& path, const ScalarField& f, const GridSpec& g) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(kFieldMagic, 8);
    const std::uint64_t n = static_cast<std::uint64_t>(g.n);
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(&g.L), 8);
    const char pad[8] = {};
    os.write(pad, 8);
    write_doubles(os, f.values.data(), f.values.size());
    if (!os) throw IoError("short write to '" + path + "'");
}

ScalarField read_scalar_field(const std::string& path, const GridSpec& g) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kFieldMagic, 8) != 0)
        throw IoError("'" + path + "' is not a field snapshot");
    std::uint64_t n = 0;
    double L = 0.0;
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&L), 8);
    is.ignore(8);
    if (static_cast<int>(n) != g.n || L != g.L)
        throw IoError("'" + path + "' grid mismatch (file n=" + std::to_string(n) +
                      ", expected " + std::to_string(g.n) + ")");
    ScalarField f(g);
    read_doubles(is, f.values.data(), f.values.size());
    return f;
}

void write_snapshot(const std::string& prefix, long step, const SimState& s, const GridSpec& g) {
    const ScalarField* comps[6] = {&s.fields.E.x, &s.fields.E.y, &s.fields.E.z,
                                   &s.fields.B.x, &s.fields.B.y, &s.fields.B.z};
    for (int c = 0; c < 6; ++c)
        write_scalar_field(prefix + "_" + component_names[c] + "_" + std::to_string(step) + ".bin",
                           *comps[c], g);
    const std::string side = prefix + "_body_" + std::to_string(step) + ".txt";
    std::ofstream os(side);
    if (!os) throw IoError("cannot open '" + side + "' for writing");
    os << "t " << fmt(s.t) << "\n";
    os << "q " << fmt(s.body.q.x) << " " << fmt(s.body.q.y) << " " << fmt(s.body.q.z) << "\n";
    os << "v " << fmt(s.body.v.x) << " " << fmt(s.body.v.y) << " " << fmt(s.body.v.z) << "\n";
    os << "w " << fmt(s.body.w.x) << " " << fmt(s.body.w.y) << " " << fmt(s.body.w.z) << "\n";
    os << "R";
    for (int i = 0; i < 9; ++i) os << " " << fmt(s.body.R.m.a[i]);
    os << "\n";
}

SimState read_snapshot(const std::string& prefix, long step, const GridSpec& g) {
    SimState s;
    s.fields = FieldState(g);
    ScalarField* comps[6] = {&s.fields.E.x, &s.fields.E.y, &s.fields.E.z,
                             &s.fields.B.x, &s.fields.B.y, &s.fields.B.z};
    for (int c = 0; c < 6; ++c)
        *comps[c] = read_scalar_field(
            prefix + "_" + component_names[c] + "_" + std::to_string(step) + ".bin", g);
    const std::string side = prefix + "_body_" + std::to_string(step) + ".txt";
    std::ifstream is(side);
    if (!is) throw IoError("cannot open '" + side + "'");
    std::string key;
    Mat3 R;
    while (is >> key) {
        if (key == "t")
            is >> s.t;
        else if (key == "q")
            is >> s.body.q.x >> s.body.q.y >> s.body.q.z;
        else if (key == "v")
            is >> s.body.v.x >> s.body.v.y >> s.body.v.z;
        else if (key == "w")
            is >> s.body.w.x >> s.body.w.y >> s.body.w.z;
        else if (key == "R")
            for (int i = 0; i < 9; ++i) is >> R.a[i];
        else
            throw IoError("unknown key '" + key + "' in '" + side + "'");
    }
    s.body.R = Rotation{R};  // stored matrix is already orthonormal
    return s;
}

std::string csv_header() {
    return "t,energy,px,py,pz,mx,my,mz,gauss_residual,qx,qy,qz,vx,vy,vz,wx,wy,wz";
}

std::string csv_row(const DiagnosticsRow& r) {
    std::string out = fmt(r.t);
    auto add = [&out](double v) { out += "," + fmt(v); };
    add(r.energy);
    add(r.momentum.x);
    add(r.momentum.y);
    add(r.momentum.z);
    add(r.angular_momentum.x);
    add(r.angular_momentum.y);
    add(r.angular_momentum.z);
    add(r.gauss_residual);
    add(r.body.q.x);
    add(r.body.q.y);
    add(r.body.q.z);
    add(r.body.v.x);
    add(r.body.v.y);
    add(r.body.v.z);
    add(r.body.w.x);
    add(r.body.w.y);
    add(r.body.w.z);
    return out;
}

void write_csv(const std::string& path, const std::vector<DiagnosticsRow>& rows) {
    std::ofstream os(path);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << csv_header() << "\n";
    for (const DiagnosticsRow& r : rows) os << csv_row(r) << "\n";
}

void write_trajectory(const std::string& path, const Trajectory& traj) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os.write(kTrajMagic, 8);
    const std::uint64_t n = static_cast<std::uint64_t>(traj.config.grid.n);
    const std::uint64_t count = traj.samples.size();
    os.write(reinterpret_cast<const char*>(&n), 8);
    os.write(reinterpret_cast<const char*>(&traj.config.grid.L), 8);
    os.write(reinterpret_cast<const char*>(&count), 8);
    os.write(reinterpret_cast<const char*>(&traj.sample_dt), 8);
    os.write(reinterpret_cast<const char*>(&traj.inertia), 8);
    for (const TrajectorySample& s : traj.samples) {
        write_doubles(os, &s.t, 1);
        write_doubles(os, &s.body.q.x, 3);
        write_doubles(os, &s.body.v.x, 3);
        write_doubles(os, &s.body.w.x, 3);
        write_doubles(os, s.body.R.m.a.data(), 9);
        const ScalarField* comps[6] = {&s.fields.E.x, &s.fields.E.y, &s.fields.E.z,
                                       &s.fields.B.x, &s.fields.B.y, &s.fields.B.z};
        for (int c = 0; c < 6; ++c) write_doubles(os, comps[c]->values.data(), comps[c]->size());
    }
    if (!os) throw IoError("short write to '" + path + "'");
}

Trajectory read_trajectory(const std::string& path, const SimConfig& cfg) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw IoError("cannot open '" + path + "'");
    char magic[8];
    is.read(magic, 8);
    if (!is || std::memcmp(magic, kTrajMagic, 8) != 0)
        throw IoError("'" + path + "' is not a trajectory file");
    std::uint64_t n = 0, count = 0;
    double L = 0.0;
    Trajectory traj;
    traj.config = cfg;
    is.read(reinterpret_cast<char*>(&n), 8);
    is.read(reinterpret_cast<char*>(&L), 8);
    is.read(reinterpret_cast<char*>(&count), 8);
    is.read(reinterpret_cast<char*>(&traj.sample_dt), 8);
    is.read(reinterpret_cast<char*>(&traj.inertia), 8);
    if (static_cast<int>(n) != cfg.grid.n || L != cfg.grid.L)
        throw IoError("trajectory grid does not match the supplied config");
    traj.samples.reserve(count);
    for (std::uint64_t k = 0; k < count; ++k) {
        TrajectorySample s;
        s.fields = FieldState(cfg.grid);
        Mat3 R;
        read_doubles(is, &s.t, 1);
        read_doubles(is, &s.body.q.x, 3);
        read_doubles(is, &s.body.v.x, 3);
        read_doubles(is, &s.body.w.x, 3);
        read_doubles(is, R.a.data(), 9);
        s.body.R = Rotation{R};
        ScalarField* comps[6] = {&s.fields.E.x, &s.fields.E.y, &s.fields.E.z,
                                 &s.fields.B.x, &s.fields.B.y, &s.fields.B.z};
        for (int c = 0; c < 6; ++c) read_doubles(is, comps[c]->values.data(), comps[c]->size());
        traj.samples.push_back(std::move(s));
    }
    return traj;
}

}  // namespace abraham
