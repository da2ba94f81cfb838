#include "langvol/error.hpp"

namespace langvol {

int exit_code_for(const Error& error) noexcept {
  switch (error.category()) {
    case Error::Category::usage:
      return 1;
    case Error::Category::data:
      return 2;
    case Error::Category::network:
      return 3;
  }
  return 2;
}

}  // namespace langvol
