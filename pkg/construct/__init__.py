# Initializes construct package
