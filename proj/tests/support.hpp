#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "atc/entailment.hpp"
#include "atc/law.hpp"

#ifndef ATC_DATA_DIR
#error "ATC_DATA_DIR must point at the sample theories"
#endif

namespace testing {

inline std::string data_path(const std::string& name) { return std::string(ATC_DATA_DIR) + "/" + name + ".atc"; }

inline std::string slurp(const std::string& path) {
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline atc::ActionTheory load(const std::string& name) { return atc::parse_theory(slurp(data_path(name))); }

inline atc::Law law(const atc::ActionTheory& t, const std::string& text) { return atc::parse_law(text, t.sig()); }

// Builds a theory over the signature of `like` from law lines.
inline atc::ActionTheory with_laws(const atc::ActionTheory& like, const std::string& body) {
  std::string text = "theory expected\natoms ";
  const auto& sig = like.sig();
  for (std::size_t i = 0; i < sig.atoms().size(); ++i) text += (i ? ", " : "") + sig.atoms()[i];
  text += "\nactions ";
  for (std::size_t i = 0; i < sig.actions().size(); ++i) text += (i ? ", " : "") + sig.actions()[i];
  return atc::parse_theory(text + "\n" + body);
}

}  // namespace testing
