#ifndef OPCOH_REPORT_HPP
#define OPCOH_REPORT_HPP

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "opcoh/errors.hpp"
#include "opcoh/presentation.hpp"

namespace opcoh {

#ifdef OPCOH_VERSION
inline constexpr const char* kVersion = OPCOH_VERSION;
#else
inline constexpr const char* kVersion = "0.1.0";
#endif

inline std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

/// Reproducibility header carried by every report file.
inline std::string report_header(const Presentation& p, int arity) {
    std::ostringstream os;
    os << "# opcoh " << kVersion << " | operad " << p.name << " | hash "
       << fnv1a_hex(p.source_text()) << " | arity " << arity << "\n";
    return os.str();
}

/// Atomic file write: temp file in the target directory, then rename.
inline void atomic_write(const std::filesystem::path& path, const std::string& content) {
    namespace fs = std::filesystem;
    fs::path dir = path.parent_path();
    if (!dir.empty()) fs::create_directories(dir);
    fs::path tmp = path;
    tmp += ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw Error("cannot write " + tmp.string());
        f << content;
    }
    fs::rename(tmp, path);
}

} // namespace opcoh

#endif
