#include "knotfactor/diagram.hpp"
