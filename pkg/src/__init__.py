# Odd arc algebra toolkit
