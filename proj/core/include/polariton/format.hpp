#ifndef POLARITON_FORMAT_HPP
#define POLARITON_FORMAT_HPP

#include <charconv>
#include <string>
#include <system_error>

namespace polariton {

/// Shortest decimal form that reads back to the same double (at most 17
/// significant digits).
inline std::string format_double(double value)
{
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc{})
    return "nan";
  return std::string(buf, end);
}

} // namespace polariton

#endif // POLARITON_FORMAT_HPP
