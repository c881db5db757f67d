#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace eitq {

/// Shortest decimal that round-trips to the same double.
std::string format_double(double v);

/// Comma-separated rows with a fixed header; floats use format_double.
class CsvWriter
{
public:
    CsvWriter(std::ostream& os, const std::vector<std::string>& header);
    void row(std::initializer_list<double> values);
    void row(const std::vector<double>& values);

private:
    std::ostream& m_os;
    std::size_t m_columns;
};

std::string sha256_hex(std::string_view data);

/// Cap from EIT_QNLSE_THREADS (default: hardware concurrency, at least 1).
unsigned thread_limit();

/// Runs body(i) for i in [0, n) on up to thread_limit() threads.
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body);

} // namespace eitq
