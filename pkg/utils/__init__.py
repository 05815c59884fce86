# Utility functions for the Weil character engine
