# Initializes design package
