#pragma once

#include <array>
#include <map>
#include <string>

#include "teamcomp/errors.hpp"

namespace teamcomp {

inline constexpr std::array<const char*, 10> kSubjects = {
    "Catalan",         "Spanish",        "English", "Nature",
    "Physics and Chemistry", "Social Science", "Math",    "Physical Education",
    "Plastic Arts",    "Technology"};

inline constexpr std::array<const char*, 8> kIntelligences = {
    "Naturalist",       "Interpersonal", "Logical/Mathematical", "Visual/Spatial",
    "Body/Kinaesthetic", "Musical",       "Intrapersonal",        "Verbal/Linguistic"};

// Binary subject-to-intelligence relevance matrix; rows follow kSubjects,
// columns follow kIntelligences.
struct IntelligenceMatrix {
  std::array<std::array<int, 8>, 10> cells{};

  static IntelligenceMatrix defaults() {
    IntelligenceMatrix matrix;
    matrix.cells = {{
        {0, 1, 0, 0, 0, 0, 1, 1},  // Catalan
        {0, 1, 0, 1, 0, 1, 1, 1},  // Spanish
        {0, 1, 0, 0, 0, 1, 1, 1},  // English
        {1, 1, 0, 1, 1, 0, 1, 1},  // Nature
        {1, 1, 1, 1, 0, 0, 1, 1},  // Physics and Chemistry
        {1, 1, 0, 0, 0, 0, 1, 1},  // Social Science
        {0, 1, 1, 1, 0, 0, 1, 1},  // Math
        {0, 1, 0, 1, 1, 0, 1, 1},  // Physical Education
        {0, 1, 0, 1, 1, 0, 1, 0},  // Plastic Arts
        {1, 1, 1, 0, 1, 0, 1, 1},  // Technology
    }};
    return matrix;
  }
};

// Intelligence level = mean of the marks of its relevant subjects, mapped
// from the [0,10] mark scale onto [0,1]. A column with no relevant subject
// yields level 0.
inline std::map<std::string, double> derive_competences(
    const std::map<std::string, double>& marks,
    const IntelligenceMatrix& matrix = IntelligenceMatrix::defaults()) {
  std::array<double, 10> mark_row{};
  for (std::size_t s = 0; s < kSubjects.size(); ++s) {
    auto it = marks.find(kSubjects[s]);
    if (it == marks.end()) {
      throw ValidationError(std::string("missing mark for subject \"") + kSubjects[s] + "\"");
    }
    if (it->second < 0.0 || it->second > 10.0) {
      throw ValidationError(std::string("mark for \"") + kSubjects[s] + "\" = " +
                            std::to_string(it->second) + " outside [0,10]");
    }
    mark_row[s] = it->second;
  }
  std::map<std::string, double> levels;
  for (std::size_t c = 0; c < kIntelligences.size(); ++c) {
    double sum = 0.0;
    int relevant = 0;
    for (std::size_t s = 0; s < kSubjects.size(); ++s) {
      if (matrix.cells[s][c] == 1) {
        sum += mark_row[s];
        ++relevant;
      }
    }
    levels[kIntelligences[c]] = relevant == 0 ? 0.0 : (sum / relevant) / 10.0;
  }
  return levels;
}

}  // namespace teamcomp
