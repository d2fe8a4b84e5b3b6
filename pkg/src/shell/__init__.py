# Command line, file formats and parallel driver
