#pragma once

#include <adacut/harness.hpp>

#include <filesystem>
#include <string_view>
#include <vector>

namespace adacut {

//! Parses a scenario file. The format is a TOML subset: `[scenario.<id>]`
//! tables of `key = value` pairs (strings, numbers, booleans, arrays), `#`
//! comments, and an optional `[defaults]` table applied to every scenario.
//!
//! `target` and `n` also accept arrays; a scenario then expands into one
//! scenario per value with ids `<id>/<target>` and `<id>/n<value>`.
std::vector<Scenario> parse_scenarios(std::string_view text);
std::vector<Scenario> load_scenarios(const std::filesystem::path& path);

} // namespace adacut
