#include <pybind11/pybind11.h>

PYBIND11_MODULE(_hlr3, m) { m.doc() = "placeholder"; }
