// Distributed under the MIT License.
// See LICENSE.txt for details.
#include "doctest.h"
