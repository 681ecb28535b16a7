# Initializes linalg package
