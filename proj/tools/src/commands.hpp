#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "config.hpp"

namespace cli {

struct Invocation {
    std::string command;  // e.g. "eval four-point"
    json cfg = json::object();
    std::optional<std::string> csv;
    int threads = 1;
};

struct Outcome {
    json outputs = json::object();
    std::optional<bool> pass;
    std::optional<std::uint64_t> seed;
};

bool known_command(const std::string& name);
// fills defaults into inv.cfg so the echoed inputs reproduce the run
Outcome run_command(Invocation& inv);
json make_record(const Invocation& inv, const Outcome& out);

}  // namespace cli
