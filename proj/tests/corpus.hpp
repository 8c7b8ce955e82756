#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "ghzw/state_io.hpp"

namespace ghzw::testing {

inline std::string read_corpus(const std::string& name) {
    std::ifstream in(std::string(GHZW_CORPUS_DIR) + "/" + name);
    if (!in) throw std::runtime_error("missing corpus file " + name);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline SymbolicState load(const std::string& name) { return parse_state(read_corpus(name)); }

}  // namespace ghzw::testing
