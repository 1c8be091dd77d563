#pragma once

#include "lefmod/fixtures.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lefmod::cli {

const char* version();

/// Bad instance text or arguments; the message carries the location.
struct InputError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Kind { Fixture, Module, Matroid, Apolar };

struct Instance {
  Kind kind = Kind::Fixture;
  std::string fixture;  // Kind::Fixture

  // Kind::Module
  AlgebraSpec algebra;
  bool regular = false;
  Vec deg;  // regular modules: deg on the top degree
  std::vector<std::size_t> module_dims;
  std::vector<std::vector<Mat>> action;  // per algebra basis element, per degree
  std::vector<Mat> form_blocks;
  std::vector<Vec> cone;

  std::optional<Matroid> matroid;  // Kind::Matroid
  int apolar_n = 0, apolar_d = 0;  // Kind::Apolar
  std::vector<Term> terms;

  // optional overrides for every kind
  std::optional<std::pair<std::vector<Vec>, std::vector<Vec>>> subalgebra;  // gens1, cone gens
  std::optional<std::size_t> samples;
  SampleStyle style = SampleStyle::generator_sums;
};

/// JSON instance text or a matroid bases list.
Instance parse_instance(const std::string& text, const std::string& source = "<input>");
/// A fixture name or a path to an instance file.
Instance load_instance(const std::string& target);
/// Canonical JSON; parse_instance(serialize(x)) serializes to the same text.
std::string serialize(const Instance& inst);
Fixture build_fixture(const Instance& inst);

std::string sha256_hex(const std::string& data);

struct Options {
  std::string command;  // check, decompose, perverse, matroid, apolar, canonical
  std::string target;
  std::string B;    // degree-one generators, comma separated
  std::string ell;  // single point for check
  std::optional<std::size_t> samples;
  std::uint64_t seed = 1;
  std::string json_out;
};

/// Exit status: 0 pass, 1 check failed, 2 input invalid.
int run(const Options& opts, std::ostream& out, std::ostream& err);

}  // namespace lefmod::cli
