#pragma once

#include <string_view>

// Data files from data/ compiled into the library. See cmake/EmbedFiles.cmake.
namespace aptc::embedded {

std::string_view aptc_schema();
std::string_view cawe_catalog();
std::string_view property_table();
std::string_view prompt_system();
std::string_view prompt_user();
std::string_view prompt_cot();
std::string_view exemplars();

}  // namespace aptc::embedded
