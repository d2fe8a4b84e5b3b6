# Exhaustive generation and ancestors
