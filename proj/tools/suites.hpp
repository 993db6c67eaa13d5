#pragma once

#include <functional>
#include <string>
#include <vector>

namespace psyn::cli {

// Worked examples re-run end to end at a size that finishes in seconds.
struct SuiteResult {
	std::string name;
	bool passed = false;
	std::string detail;
};

struct Suite {
	std::string name;
	std::string summary;
	std::function<SuiteResult()> run;
};

const std::vector<Suite> &suites();

} // namespace psyn::cli
