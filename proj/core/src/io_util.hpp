#pragma once

#include <string>

namespace cloudmcdm::detail {

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& contents);

}  // namespace cloudmcdm::detail
