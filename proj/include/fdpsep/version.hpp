#ifndef FDPSEP_VERSION_HPP_
#define FDPSEP_VERSION_HPP_

#define FDPSEP_VERSION_MAJOR 1
#define FDPSEP_VERSION_MINOR 0
#define FDPSEP_VERSION_PATCH 0
#define FDPSEP_VERSION_STRING "1.0.0"

#endif  // FDPSEP_VERSION_HPP_
