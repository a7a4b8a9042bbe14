#ifndef DLITE_TYPES_HPP
#define DLITE_TYPES_HPP

#include <cstdint>
#include <stdexcept>
#include <string>

namespace dlite {

// Numbers in >=q R restrictions. 64-bit, binary-coded on input.
using qint = long long;

struct SourceSpan {
    int line_begin = 0;
    int col_begin = 0;
    int line_end = 0;
    int col_end = 0;

    bool valid() const { return line_begin > 0; }
    std::string str() const;
};

class Error : public std::runtime_error {
  public:
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

class ParseError : public Error {
  public:
    ParseError(const std::string& msg, SourceSpan span)
        : Error(msg + " at " + span.str()), span_(span) {}
    SourceSpan span() const { return span_; }

  private:
    SourceSpan span_;
};

// Raised when an engine is asked to handle a KB outside its sound fragment.
class FragmentError : public Error {
  public:
    explicit FragmentError(const std::string& msg) : Error(msg) {}
};

class BudgetError : public Error {
  public:
    explicit BudgetError(const std::string& msg) : Error(msg) {}
};

class UnknownNameError : public Error {
  public:
    explicit UnknownNameError(const std::string& msg) : Error(msg) {}
};

class InconsistentKbError : public Error {
  public:
    explicit InconsistentKbError(const std::string& msg) : Error(msg) {}
};

enum class Verdict {
    Sat,
    Unsat,
    FragmentUnsupported,
    BudgetExceeded,
};

const char* to_string(Verdict v);

} // namespace dlite

#endif
