#include "eit_qnlse/io.hpp"

#include "eit_qnlse/errors.hpp"

#include <openssl/evp.h>

#include <algorithm>
#include <array>
#include <charconv>
#include <cstdlib>
#include <ostream>
#include <thread>

namespace eitq {

std::string format_double(double v)
{
    std::array<char, 64> buf{};
    auto [end, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
    if (ec != std::errc{})
        throw Error("format_double: to_chars failed");
    return std::string(buf.data(), end);
}

CsvWriter::CsvWriter(std::ostream& os, const std::vector<std::string>& header)
    : m_os(os), m_columns(header.size())
{
    for (std::size_t i = 0; i < header.size(); ++i)
        m_os << (i ? "," : "") << header[i];
    m_os << '\n';
}

void CsvWriter::row(std::initializer_list<double> values)
{
    row(std::vector<double>(values));
}

void CsvWriter::row(const std::vector<double>& values)
{
    if (values.size() != m_columns)
        throw Error("CsvWriter: row has " + std::to_string(values.size()) +
                    " values, header has " + std::to_string(m_columns));
    for (std::size_t i = 0; i < values.size(); ++i)
        m_os << (i ? "," : "") << format_double(values[i]);
    m_os << '\n';
}

std::string sha256_hex(std::string_view data)
{
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1)
        throw Error("sha256: digest failed");
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(kHex[md[i] >> 4]);
        out.push_back(kHex[md[i] & 0xf]);
    }
    return out;
}

unsigned thread_limit()
{
    unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    if (const char* env = std::getenv("EIT_QNLSE_THREADS")) {
        unsigned cap = 0;
        std::string_view s(env);
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), cap);
        if (ec == std::errc{} && ptr == s.data() + s.size() && cap > 0)
            return std::min(hw, cap);
    }
    return hw;
}

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body)
{
    const std::size_t workers = std::min<std::size_t>(thread_limit(), n);
    if (workers <= 1) {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = w; i < n; i += workers)
                    body(i);
            } catch (...) {
                errors[w] = std::current_exception();
            }
        });
    }
    for (auto& t : pool)
        t.join();
    for (auto& e : errors)
        if (e)
            std::rethrow_exception(e);
}

} // namespace eitq
