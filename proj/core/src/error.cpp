#include "multisle/error.hpp"
