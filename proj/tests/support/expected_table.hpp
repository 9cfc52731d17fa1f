#pragma once

#include <array>
#include <string>

namespace aptc::testkit {

/// Reference evaluation table, typed in by hand. Independent of the script
/// that authors the score fixture.
struct ExpectedRow {
  const char* strategy;
  const char* model;
  const char* metric;
  std::array<int, 3> per_case;  ///< Maintenance, PowerGrid, Bank
  int total;
  const char* rate;
};

inline constexpr std::array<ExpectedRow, 12> kExpectedTable{{
    {"zero-shot", "GPT-5.2", "correctness", {2, 3, 4}, 9, "60.0"},
    {"zero-shot", "GPT-5.2", "usefulness", {5, 4, 4}, 13, "86.7"},
    {"zero-shot", "Gemini-3-Pro", "correctness", {4, 2, 4}, 10, "66.7"},
    {"zero-shot", "Gemini-3-Pro", "usefulness", {3, 2, 5}, 10, "66.7"},
    {"one-shot", "GPT-5.2", "correctness", {4, 3, 4}, 11, "73.3"},
    {"one-shot", "GPT-5.2", "usefulness", {4, 3, 4}, 11, "73.3"},
    {"one-shot", "Gemini-3-Pro", "correctness", {5, 4, 4}, 13, "86.7"},
    {"one-shot", "Gemini-3-Pro", "usefulness", {5, 5, 4}, 14, "93.3"},
    {"few-shot", "GPT-5.2", "correctness", {4, 4, 3}, 11, "73.3"},
    {"few-shot", "GPT-5.2", "usefulness", {4, 4, 4}, 12, "80.0"},
    {"few-shot", "Gemini-3-Pro", "correctness", {2, 2, 2}, 6, "40.0"},
    {"few-shot", "Gemini-3-Pro", "usefulness", {2, 5, 3}, 10, "66.7"},
}};

inline constexpr std::array<const char*, 16> kRateSet{
    "0.0",  "6.7",  "13.3", "20.0", "26.7", "33.3", "40.0", "46.7",
    "53.3", "60.0", "66.7", "73.3", "80.0", "86.7", "93.3", "100.0"};

}  // namespace aptc::testkit
