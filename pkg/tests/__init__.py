# Ququart Toolkit - Test Suite
