# Initializes utils package
