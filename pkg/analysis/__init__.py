# Initializes analysis package
