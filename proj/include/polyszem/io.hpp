#pragma once

#include <string>

#include <nlohmann/json.hpp>

#include "polyszem/dynamics.hpp"
#include "polyszem/gowers.hpp"
#include "polyszem/patterns.hpp"
#include "polyszem/pet.hpp"
#include "polyszem/primes.hpp"

namespace polyszem::io {

using json = nlohmann::ordered_json;

// Families: {"ell", "m", "entries"}; entries[i][j] is a list over n-powers
// of integer h-coefficient arrays, both in ascending order.
json family_to_json(const pet::PolyFamily& f);
pet::PolyFamily family_from_json(const json& j);

json type_to_json(const pet::TypeMatrix& t);
json trace_to_json(const pet::PetTrace& tr);

// One scalar value: a plain number (taken as real) or an [re, im] pair.
std::complex<double> complex_value_from_json(const json& v);

// Sequences: {"N", "modulus", "values": [...]} or a bare array of values.
json sequence_to_json(const gowers::ArithSequence& a);
gowers::ArithSequence sequence_from_json(const json& j);

// Systems: {"size", "maps": [[images]], "labels"?}; maps are 0-based.
json system_to_json(const dynamics::FiniteSystem& sys);
dynamics::FiniteSystem system_from_json(const json& j);

json profile_to_json(const primes::UniformityProfile& p);

// Sets: JSON {"ell", "window": [[lo, hi]...]} plus either "points" or
// "density" + "seed"; plain text files hold one integer tuple per line with
// the bounding box as window.
patterns::WindowedSet set_from_json(const json& j);
patterns::WindowedSet load_set(const std::string& path);

std::vector<dynamics::Observable> observables_from_json(const json& j);

json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
void write_csv(const std::string& path, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& rows);

}  // namespace polyszem::io
