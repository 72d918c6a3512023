# Quotients, centers, associators and linear algebra
